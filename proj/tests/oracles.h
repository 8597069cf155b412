// Copyright 2026 The incore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCORE_TESTS_ORACLES_H_
#define INCORE_TESTS_ORACLES_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "incore/dependency_graph.h"
#include "incore/machine_model.h"
#include "incore/parser.h"
#include "test_support.h"

namespace incore::testing {

// Exhaustive enumeration of every path; a path is worth its edge weights
// plus the latency of its last vertex.
struct Best {
  Cycles value{-1};
  std::vector<int> path;
};

inline void Enumerate(const DependencyDag& dag, std::vector<int>& path, Cycles sum, Best& best) {
  const int v = path.back();
  const Cycles value = sum + dag.vertices[v].latency_out;
  if (value > best.value || (value == best.value && path < best.path)) {
    best.value = value;
    best.path = path;
  }
  for (std::size_t e : dag.out[v]) {
    path.push_back(dag.edges[e].to);
    Enumerate(dag, path, sum + dag.edges[e].weight, best);
    path.pop_back();
  }
}

inline Best ExhaustiveLongestPath(const DependencyDag& dag) {
  Best best;
  for (const auto& v : dag.vertices) {
    std::vector<int> path = {v.id};
    Enumerate(dag, path, Cycles(0), best);
  }
  return best;
}

// Up to 12 vertices, quarter-cycle latencies, random edge density.
inline DependencyDag RandomDag(std::mt19937& rng) {
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_int_distribution<int> quarter(1, 24);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = size(rng);
  const double density = coin(rng);
  std::vector<DepVertex> vertices(n);
  for (int i = 0; i < n; ++i) {
    vertices[i].id = i;
    vertices[i].line_number = i + 1;
    vertices[i].latency_out = Cycles(quarter(rng), 4);
  }
  std::vector<DepEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < density) edges.push_back({i, j, vertices[i].latency_out, "r", false});
    }
  }
  return MakeDag(std::move(vertices), std::move(edges));
}

struct PlantedKernel {
  std::string text;
  Cycles expected{0};
};

// A register cycle through `length` instructions, interleaved with
// instructions whose results are never read.
inline PlantedKernel PlantAArch64(std::mt19937& rng, int length) {
  const MachineModel& tx2 = BundledModel("tx2");
  const std::vector<std::string> ops = {"fadd", "fmul", "fsub", "fmax"};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(ops.size()) - 1);
  std::uniform_int_distribution<int> noise_count(0, 3);
  std::uniform_int_distribution<int> constant(8, 15);
  std::vector<int> chain(8);
  for (int i = 0; i < 8; ++i) chain[i] = i;
  std::shuffle(chain.begin(), chain.end(), rng);
  PlantedKernel k;
  int fresh = 16;
  auto noise = [&] {
    for (int n = noise_count(rng); n > 0 && fresh < 31; --n) {
      if (rng() % 2) {
        k.text += "ldr d" + std::to_string(fresh++) + ", [x" + std::to_string(20 + rng() % 5) +
                  ", " + std::to_string(8 * (rng() % 8)) + "]\n";
      } else {
        k.text += "fmul d" + std::to_string(fresh++) + ", d" + std::to_string(constant(rng)) +
                  ", d" + std::to_string(constant(rng)) + "\n";
      }
    }
  };
  for (int j = 0; j < length; ++j) {
    noise();
    const std::string op = ops[pick(rng)];
    const int src = chain[j];
    const int dst = chain[(j + 1) % length];
    const std::string line = op + " d" + std::to_string(dst) + ", d" + std::to_string(src) +
                             ", d" + std::to_string(constant(rng)) + "\n";
    k.text += line;
    k.expected += Lookup(tx2, ParseLine(line, 1, Isa::kAArch64))->latency;
  }
  noise();
  return k;
}

inline PlantedKernel PlantX86(std::mt19937& rng, int length) {
  const MachineModel& clx = BundledModel("clx");
  const std::vector<std::string> ops = {"vaddsd", "vmulsd", "vsubsd", "vdivsd"};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(ops.size()) - 1);
  std::vector<int> chain = {0, 1, 2, 3, 4, 5};
  std::shuffle(chain.begin(), chain.end(), rng);
  PlantedKernel k;
  int fresh = 8;
  for (int j = 0; j < length; ++j) {
    if (rng() % 2) {
      k.text += "vmovsd " + std::to_string(8 * (rng() % 8)) + "(%rsi), %xmm" +
                std::to_string(fresh++) + "\n";
    }
    const std::string op = ops[pick(rng)];
    const std::string line = op + " %xmm6, %xmm" + std::to_string(chain[j]) + ", %xmm" +
                             std::to_string(chain[(j + 1) % length]) + "\n";
    k.text += line;
    k.expected += Lookup(clx, ParseLine(line, 1, Isa::kX86))->latency;
  }
  k.text += "addq $8, %rsi\ncmpq %rsi, %rdi\njne .L1\n";
  return k;
}

}  // namespace incore::testing

#endif  // INCORE_TESTS_ORACLES_H_
