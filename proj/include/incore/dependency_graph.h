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

#ifndef INCORE_DEPENDENCY_GRAPH_H_
#define INCORE_DEPENDENCY_GRAPH_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/resolve.h"

namespace incore {

enum class VertexKind {
  kInstruction,
  // Memory read of a split form whose address registers have producers.
  kLoad,
  // Address-register update of a pre/post-indexed access (decoupled graphs).
  kWriteback,
};

struct DepVertex {
  int id = 0;
  VertexKind kind = VertexKind::kInstruction;
  int line_number = 0;
  int copy = 1;
  // Index into the resolved form list.
  std::size_t form_index = 0;
  Cycles latency_out{0};
  // Weight of edges that carry a writeback register out of this vertex.
  Cycles writeback_latency{0};
};

struct DepEdge {
  int from = 0;
  int to = 0;
  Cycles weight{0};
  std::string reg;
  bool via_writeback = false;
};

// How the address-register update of a pre/post-indexed access is modeled.
enum class WritebackCoupling {
  // One vertex: every source of the access also gates the base update.
  kCoupled,
  // Separate vertex fed only by the base and increment registers.
  kDecoupled,
};

struct DependencyDag {
  std::vector<DepVertex> vertices;
  std::vector<DepEdge> edges;
  // Outgoing edge indices per vertex, ordered by target id.
  std::vector<std::vector<std::size_t>> out;
  int copies = 1;
  WritebackCoupling coupling = WritebackCoupling::kCoupled;

  // Vertex of the same kind and form in another copy, or -1.
  int Twin(int vertex, int copy) const;
};

// Vertex ids follow program order, so every edge points to a larger id.
DependencyDag BuildDag(const std::vector<ResolvedForm>& forms, int copies,
                       WritebackCoupling coupling);

// Builds a graph from explicit vertices and edges (used by tests).
DependencyDag MakeDag(std::vector<DepVertex> vertices, std::vector<DepEdge> edges);

// Throws Error if the graph has a cycle or an edge weight that does not match
// its source vertex.
void VerifyDag(const DependencyDag& dag);

struct PathResult {
  enum class Kind { kCriticalPath, kLcdCycle };
  Kind kind = Kind::kCriticalPath;
  std::vector<int> vertices;
  // Per vertex: weight of the outgoing path edge; for the last vertex of a
  // critical path its own latency, for the closing vertex of a cycle zero.
  std::vector<Cycles> contributions;
  Cycles total_latency{0};

  bool empty() const { return vertices.empty(); }
};

// Longest path where the length is the sum of edge weights plus the latency
// of the final vertex. Ties go to the lexicographically smallest vertex-id
// sequence.
PathResult CriticalPath(const DependencyDag& dag);

// Cyclic dependencies found on a two-copy graph: for every first-copy vertex,
// the longest path to its second-copy twin. Sorted by total latency
// (descending), then by root; cycles covering the same lines are reported
// once.
std::vector<PathResult> FindLcds(const DependencyDag& doubled);

std::vector<PathResult> FindLcds(const std::vector<ResolvedForm>& forms);

// Line number -> summed latency contributions of the path.
std::map<int, Cycles> MarkReportPaths(const DependencyDag& dag, const PathResult& path);

std::string ExportDot(const DependencyDag& dag, const PathResult& cp,
                      const PathResult& lcd, const DependencyDag* lcd_dag);

}  // namespace incore

#endif  // INCORE_DEPENDENCY_GRAPH_H_
