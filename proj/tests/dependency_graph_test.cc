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

#include "incore/dependency_graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "incore/resolve.h"
#include "test_support.h"

namespace incore {
namespace {

using testing::BundledModel;
using testing::KernelFromText;

std::vector<ResolvedForm> Resolve(const std::string& text, const std::string& arch = "tx2") {
  const MachineModel& model = BundledModel(arch);
  return ResolveKernel(KernelFromText(text, model.isa), model);
}

const DepEdge* FindEdge(const DependencyDag& dag, int from_line, int to_line,
                        VertexKind from_kind = VertexKind::kInstruction) {
  for (const auto& e : dag.edges) {
    const auto& a = dag.vertices[e.from];
    const auto& b = dag.vertices[e.to];
    if (a.line_number == from_line && b.line_number == to_line && a.kind == from_kind &&
        a.copy == 1 && b.copy == 1) {
      return &e;
    }
  }
  return nullptr;
}

std::vector<int> Lines(const DependencyDag& dag, const PathResult& path) {
  std::vector<int> lines;
  for (int v : path.vertices) lines.push_back(dag.vertices[v].line_number);
  return lines;
}

TEST(BuildDagTest, EdgesCarryProducerLatency) {
  const auto forms = Resolve("fadd d3, d1, d30\nfadd d4, d3, d2\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  ASSERT_EQ(dag.vertices.size(), 2u);
  const DepEdge* edge = FindEdge(dag, 1, 2);
  ASSERT_NE(edge, nullptr);
  EXPECT_EQ(edge->weight, Cycles(6));
  EXPECT_EQ(edge->reg, "v3");
}

TEST(BuildDagTest, ImmediateMoveBreaksTheChain) {
  const auto forms = Resolve("mov x0, #1\nadd x1, x0, x0\nmov x0, #2\nadd x2, x0, x0\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  EXPECT_NE(FindEdge(dag, 1, 2), nullptr);
  EXPECT_EQ(FindEdge(dag, 1, 4), nullptr);
  EXPECT_NE(FindEdge(dag, 3, 4), nullptr);
}

TEST(BuildDagTest, ImmediatesAndLabelsNeverCreateEdges) {
  const auto forms = Resolve("b .L1\nadd x1, x2, 3\n.L1:\nbne .L1\n");
  EXPECT_TRUE(BuildDag(forms, 1, WritebackCoupling::kCoupled).edges.empty());
}

TEST(BuildDagTest, LoadVertexOnlyWithAddressProducer) {
  const auto x86 = Resolve("addq $8, %rax\nvaddsd (%rax), %xmm0, %xmm1\nvaddsd (%rbx), %xmm1, %xmm2\n",
                           "clx");
  const DependencyDag dag = BuildDag(x86, 1, WritebackCoupling::kCoupled);
  int loads = 0;
  for (const auto& v : dag.vertices) loads += v.kind == VertexKind::kLoad;
  EXPECT_EQ(loads, 1);
  const DepEdge* into_load = FindEdge(dag, 1, 2);
  ASSERT_NE(into_load, nullptr);
  EXPECT_EQ(dag.vertices[into_load->to].kind, VertexKind::kLoad);
  const DepEdge* load_edge = FindEdge(dag, 2, 2, VertexKind::kLoad);
  ASSERT_NE(load_edge, nullptr);
  EXPECT_EQ(load_edge->weight, BundledModel("clx").load_latency);
  const DepEdge* compute = FindEdge(dag, 2, 3);
  ASSERT_NE(compute, nullptr);
  EXPECT_EQ(compute->weight, Cycles(4));
}

TEST(BuildDagTest, PureLoadsHaveNoLoadVertex) {
  const auto forms = Resolve("add x15, x15, 32\nldr d31, [x15, x18, lsl 3]\nfadd d1, d31, d0\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  for (const auto& v : dag.vertices) EXPECT_NE(v.kind, VertexKind::kLoad);
  EXPECT_EQ(FindEdge(dag, 2, 3)->weight, Cycles(4));
}

TEST(BuildDagTest, WritebackEdgeUsesWritebackLatency) {
  const auto forms = Resolve("str d5, [x14], 8\nldr d6, [x14, x18, lsl 3]\n");
  const DependencyDag coupled = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const DepEdge* edge = FindEdge(coupled, 1, 2);
  ASSERT_NE(edge, nullptr);
  EXPECT_TRUE(edge->via_writeback);
  EXPECT_EQ(edge->weight, Cycles(4));
  const DependencyDag decoupled = BuildDag(forms, 1, WritebackCoupling::kDecoupled);
  const DepEdge* wb = FindEdge(decoupled, 1, 2, VertexKind::kWriteback);
  ASSERT_NE(wb, nullptr);
  EXPECT_EQ(wb->weight, Cycles(4));
}

TEST(BuildDagTest, DoubledGraphTwins) {
  const auto forms = Resolve("fadd d0, d0, d1\n");
  const DependencyDag dag = BuildDag(forms, 2, WritebackCoupling::kDecoupled);
  ASSERT_EQ(dag.vertices.size(), 2u);
  EXPECT_EQ(dag.Twin(0, 2), 1);
  EXPECT_EQ(dag.Twin(1, 1), 0);
  EXPECT_THROW(BuildDag(forms, 3, WritebackCoupling::kCoupled), Error);
}

TEST(VerifyDagTest, RejectsBackwardEdgesAndWrongWeights) {
  std::vector<DepVertex> vertices(2);
  vertices[0].id = 0;
  vertices[0].latency_out = Cycles(3);
  vertices[1].id = 1;
  EXPECT_THROW(MakeDag(vertices, {{1, 0, Cycles(0), "r", false}}), Error);
  EXPECT_THROW(MakeDag(vertices, {{0, 1, Cycles(2), "r", false}}), Error);
  EXPECT_THROW(MakeDag(vertices, {{0, 5, Cycles(3), "r", false}}), Error);
  EXPECT_NO_THROW(MakeDag(vertices, {{0, 1, Cycles(3), "r", false}}));
}

TEST(CriticalPathTest, EmptyAndSingleVertex) {
  EXPECT_TRUE(CriticalPath(DependencyDag{}).empty());
  EXPECT_EQ(CriticalPath(DependencyDag{}).total_latency, Cycles(0));
  const auto forms = Resolve("fadd d0, d1, d2\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const PathResult cp = CriticalPath(dag);
  ASSERT_EQ(cp.vertices.size(), 1u);
  EXPECT_EQ(cp.total_latency, Cycles(6));
}

TEST(CriticalPathTest, TieBreakPrefersSmallestLines) {
  const auto forms = Resolve("fadd d0, d1, d2\nfadd d3, d4, d5\nfadd d6, d0, d3\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const PathResult cp = CriticalPath(dag);
  EXPECT_EQ(cp.total_latency, Cycles(12));
  EXPECT_EQ(Lines(dag, cp), (std::vector<int>{1, 3}));
}

TEST(CriticalPathTest, GaussSeidelHundredCycles) {
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto forms = ResolveKernel(kernel, BundledModel("tx2"));
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const PathResult cp = CriticalPath(dag);
  // [PAPER] CP sum and marked lines of the TX2 Gauss-Seidel kernel.
  EXPECT_EQ(cp.total_latency, Cycles(100));
  Cycles sum(0);
  for (const auto& c : cp.contributions) sum += c;
  EXPECT_EQ(sum, cp.total_latency);
  const auto marks = MarkReportPaths(dag, cp);
  std::vector<int> lines;
  for (const auto& [line, value] : marks) lines.push_back(line);
  const std::vector<int> expected = {520, 526, 527, 528, 529, 530, 531, 535, 536, 537,
                                     538, 544, 545, 546, 552, 553, 554, 555};
  EXPECT_EQ(lines, expected);
  EXPECT_EQ(marks.at(520), Cycles(4));
  EXPECT_EQ(marks.at(527), Cycles(6));
  EXPECT_EQ(marks.at(530), Cycles(4));
  EXPECT_EQ(marks.count(556), 0u);
}

TEST(FindLcdsTest, SelfDependency) {
  const auto lcds = FindLcds(Resolve("fadd d0, d0, d1\n"));
  ASSERT_EQ(lcds.size(), 1u);
  // [PAPER] fadd latency on TX2.
  EXPECT_EQ(lcds[0].total_latency, Cycles(6));
  EXPECT_EQ(lcds[0].kind, PathResult::Kind::kLcdCycle);
  EXPECT_EQ(lcds[0].vertices.size(), 2u);
}

TEST(FindLcdsTest, IndependentStreamsHaveNone) {
  EXPECT_TRUE(FindLcds(Resolve("ldr d0, [x1]\nstr d0, [x2]\nldr d3, [x4, 8]\n")).empty());
}

TEST(FindLcdsTest, GaussSeidelSeventyTwo) {
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto forms = ResolveKernel(kernel, BundledModel("tx2"));
  const DependencyDag doubled = BuildDag(forms, 2, WritebackCoupling::kDecoupled);
  const auto lcds = FindLcds(doubled);
  ASSERT_FALSE(lcds.empty());
  // [PAPER] LCD sum and its twelve fadd/fmul lines.
  EXPECT_EQ(lcds[0].total_latency, Cycles(72));
  for (std::size_t i = 1; i < lcds.size(); ++i) {
    EXPECT_LE(lcds[i].total_latency, lcds[i - 1].total_latency);
  }
  const auto marks = MarkReportPaths(doubled, lcds[0]);
  std::vector<int> lines;
  for (const auto& [line, value] : marks) {
    lines.push_back(line);
    EXPECT_EQ(value, Cycles(6));
  }
  const std::vector<int> expected = {527, 528, 529, 536, 537, 538,
                                     544, 545, 546, 552, 553, 554};
  EXPECT_EQ(lines, expected);
  const auto& head = lcds[0];
  EXPECT_EQ(doubled.vertices[head.vertices.front()].form_index,
            doubled.vertices[head.vertices.back()].form_index);
  EXPECT_EQ(doubled.vertices[head.vertices.front()].copy, 1);
  EXPECT_EQ(doubled.vertices[head.vertices.back()].copy, 2);
}

TEST(ExportDotTest, TwoInstructionChain) {
  const auto forms = Resolve("fadd d3, d1, d30\nfadd d4, d3, d2\n");
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const std::string dot = ExportDot(dag, CriticalPath(dag), PathResult{}, nullptr);
  EXPECT_NE(dot.find("n0 [label=\"1\""), std::string::npos);
  EXPECT_NE(dot.find("n1 [label=\"2\""), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1 [label=\"6.0\""), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 1);
}

TEST(ExportDotTest, EmptyDigraph) {
  EXPECT_EQ(ExportDot(DependencyDag{}, PathResult{}, PathResult{}, nullptr),
            "digraph dependencies {\n}\n");
}

TEST(ExportDotTest, GaussSeidelStyling) {
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto forms = ResolveKernel(kernel, BundledModel("tx2"));
  const DependencyDag dag = BuildDag(forms, 1, WritebackCoupling::kCoupled);
  const DependencyDag doubled = BuildDag(forms, 2, WritebackCoupling::kDecoupled);
  const auto lcds = FindLcds(doubled);
  const std::string dot = ExportDot(dag, CriticalPath(dag), lcds.at(0), &doubled);
  EXPECT_NE(dot.find("fillcolor=orange"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed, color=deeppink"), std::string::npos);
  EXPECT_NE(dot.find("constraint=false"), std::string::npos);
  std::size_t filled = 0;
  for (std::size_t pos = 0; (pos = dot.find("fillcolor=orange", pos)) != std::string::npos; ++pos) {
    ++filled;
  }
  EXPECT_EQ(filled, 12u);
}

}  // namespace
}  // namespace incore
