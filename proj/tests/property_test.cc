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

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "incore/dependency_graph.h"
#include "incore/parser.h"
#include "incore/report.h"
#include "incore/resolve.h"
#include "oracles.h"
#include "test_support.h"

namespace incore {
namespace {

using testing::Best;
using testing::BundledModel;
using testing::ExhaustiveLongestPath;
using testing::KernelFromText;
using testing::PlantAArch64;
using testing::PlantedKernel;
using testing::PlantX86;
using testing::RandomDag;

TEST(CriticalPathOracle, RandomDagsMatchExhaustiveEnumeration) {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    const DependencyDag dag = RandomDag(rng);
    const Best best = ExhaustiveLongestPath(dag);
    const PathResult cp = CriticalPath(dag);
    ASSERT_EQ(cp.total_latency, best.value) << "round " << round;
    EXPECT_EQ(cp.vertices, best.path) << "round " << round;
    Cycles sum(0);
    for (const auto& c : cp.contributions) sum += c;
    EXPECT_EQ(sum, cp.total_latency);
  }
}

TEST(LcdOracle, SingleInstructionCycle) {
  const MachineModel& tx2 = BundledModel("tx2");
  const auto forms = ResolveKernel(KernelFromText("fadd d0, d0, d1\n", Isa::kAArch64), tx2);
  const auto lcds = FindLcds(forms);
  ASSERT_FALSE(lcds.empty());
  // [PAPER] fadd latency on TX2.
  EXPECT_EQ(lcds[0].total_latency, Cycles(6));
}

TEST(LcdOracle, PlantedAArch64Cycles) {
  std::mt19937 rng(11);
  const MachineModel& tx2 = BundledModel("tx2");
  for (int round = 0; round < 40; ++round) {
    const PlantedKernel k = PlantAArch64(rng, 1 + round % 8);
    const auto lcds = FindLcds(ResolveKernel(KernelFromText(k.text, Isa::kAArch64), tx2));
    ASSERT_FALSE(lcds.empty()) << k.text;
    EXPECT_EQ(lcds[0].total_latency, k.expected) << k.text;
  }
}

TEST(LcdOracle, PlantedX86Cycles) {
  std::mt19937 rng(12);
  const MachineModel& clx = BundledModel("clx");
  for (int round = 0; round < 30; ++round) {
    const PlantedKernel k = PlantX86(rng, 1 + round % 6);
    const auto lcds = FindLcds(ResolveKernel(KernelFromText(k.text, Isa::kX86), clx));
    ASSERT_FALSE(lcds.empty()) << k.text;
    // The pointer bump is a 1 cy self-cycle; the planted chain dominates.
    EXPECT_EQ(lcds[0].total_latency, k.expected) << k.text;
  }
}

TEST(LcdOracle, RegisterDisjointKernelsHaveNoCycle) {
  std::mt19937 rng(13);
  const MachineModel& tx2 = BundledModel("tx2");
  for (int round = 0; round < 30; ++round) {
    std::string text;
    const int count = 1 + round % 10;
    for (int i = 0; i < count; ++i) {
      const std::string dst = std::to_string(i);
      switch (rng() % 3) {
        case 0: text += "fadd d" + dst + ", d20, d21\n"; break;
        case 1: text += "ldr d" + dst + ", [x1, " + std::to_string(8 * i) + "]\n"; break;
        default: text += "mov x" + dst + ", #" + std::to_string(i) + "\n"; break;
      }
    }
    const auto lcds = FindLcds(ResolveKernel(KernelFromText(text, Isa::kAArch64), tx2));
    EXPECT_TRUE(lcds.empty()) << text;
  }
}

std::multiset<Cycles> LcdLengths(const std::vector<ResolvedForm>& forms) {
  std::multiset<Cycles> per_root;
  const DependencyDag doubled = BuildDag(forms, 2, WritebackCoupling::kDecoupled);
  for (const auto& path : FindLcds(doubled)) per_root.insert(path.total_latency);
  return per_root;
}

TEST(LcdSymmetry, RotatingTheLoopBodyKeepsCycleLengths) {
  const MachineModel& tx2 = BundledModel("tx2");
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  std::vector<InstructionForm> body;
  for (const auto& f : kernel.forms) {
    if (f.is_instruction()) body.push_back(f);
  }
  const std::vector<Cycles> reference = [&] {
    const auto lengths = LcdLengths(ResolveKernel(kernel, tx2));
    return std::vector<Cycles>(lengths.begin(), lengths.end());
  }();
  ASSERT_FALSE(reference.empty());
  for (std::size_t shift = 1; shift < body.size(); shift += 3) {
    Kernel rotated;
    rotated.isa = Isa::kAArch64;
    for (std::size_t i = 0; i < body.size(); ++i) {
      rotated.forms.push_back(body[(i + shift) % body.size()]);
      rotated.forms.back().line_number = static_cast<int>(i) + 1;
    }
    const auto lengths = LcdLengths(ResolveKernel(rotated, tx2));
    EXPECT_EQ(*lengths.rbegin(), reference.back()) << "shift " << shift;
    EXPECT_EQ(std::set<Cycles>(lengths.begin(), lengths.end()),
              std::set<Cycles>(reference.begin(), reference.end()))
        << "shift " << shift;
  }
}

TEST(LcdSymmetry, PlantedCyclesUnderRotation) {
  std::mt19937 rng(14);
  const MachineModel& tx2 = BundledModel("tx2");
  for (int round = 0; round < 20; ++round) {
    const PlantedKernel k = PlantAArch64(rng, 2 + round % 5);
    auto forms = ParseFile(k.text, Isa::kAArch64);
    std::rotate(forms.begin(), forms.begin() + static_cast<long>(rng() % forms.size()),
                forms.end());
    Kernel rotated{forms, Isa::kAArch64};
    const auto lcds = FindLcds(ResolveKernel(rotated, tx2));
    ASSERT_FALSE(lcds.empty());
    EXPECT_EQ(lcds[0].total_latency, k.expected);
  }
}

class CorpusGraphs : public ::testing::TestWithParam<std::pair<const char*, const char*>> {};

TEST_P(CorpusGraphs, EdgeWeightsAndBracketInvariants) {
  const auto [file, arch] = GetParam();
  const MachineModel& model = BundledModel(arch);
  const Kernel kernel =
      KernelFromText(ReadTextFile(testing::DataPath(file)), model.isa);
  const auto forms = ResolveKernel(kernel, model);
  for (auto coupling : {WritebackCoupling::kCoupled, WritebackCoupling::kDecoupled}) {
    for (int copies : {1, 2}) {
      const DependencyDag dag = BuildDag(forms, copies, coupling);
      for (const auto& edge : dag.edges) {
        const DepVertex& src = dag.vertices[edge.from];
        EXPECT_LT(edge.from, edge.to);
        EXPECT_EQ(edge.weight, edge.via_writeback ? src.writeback_latency : src.latency_out);
      }
    }
  }
  const DependencyDag doubled = BuildDag(forms, 2, WritebackCoupling::kDecoupled);
  const auto lcds = FindLcds(doubled);
  if (!lcds.empty()) {
    EXPECT_LE(lcds[0].total_latency, CriticalPath(doubled).total_latency);
  }
}

INSTANTIATE_TEST_SUITE_P(Corpora, CorpusGraphs,
                         ::testing::Values(std::make_pair("corpus.x86.s", "clx"),
                                           std::make_pair("corpus.avx2.x86.s", "zen"),
                                           std::make_pair("corpus.aarch64.s", "tx2"),
                                           std::make_pair("gauss_seidel.clx.s", "clx"),
                                           std::make_pair("gauss_seidel.zen.s", "zen")),
                         [](const auto& info) {
                           std::string name = std::string(info.param.second) + "_" +
                                              info.param.first;
                           for (char& ch : name) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return name;
                         });

TEST(ReportInvariants, ColumnsSumToTotals) {
  for (const auto& [file, arch] :
       std::vector<std::pair<std::string, std::string>>{{"gauss_seidel.tx2.s", "tx2"},
                                                        {"gauss_seidel.clx.s", "clx"},
                                                        {"gauss_seidel.zen.s", "zen"}}) {
    const MachineModel& model = BundledModel(arch);
    const Kernel kernel = testing::MarkedKernel(file, model.isa);
    const AnalysisReport report = Analyze(kernel, model, 4);
    std::vector<Cycles> sums(report.ports.size(), Cycles(0));
    Cycles lcd(0);
    Cycles cp(0);
    for (const auto& line : report.lines) {
      for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += line.pressure[p];
      if (line.lcd) lcd += *line.lcd;
      if (line.cp) cp += *line.cp;
    }
    EXPECT_EQ(sums, report.port_sums) << file;
    EXPECT_EQ(lcd, report.lcd_total) << file;
    EXPECT_EQ(cp, report.cp_total) << file;
    EXPECT_LE(report.tp_per_src_iter, report.cp_per_src_iter()) << file;
  }
}

}  // namespace
}  // namespace incore
