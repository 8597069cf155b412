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

#include "incore/throughput.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "incore/parser.h"
#include "incore/resolve.h"
#include "test_support.h"

namespace incore {
namespace {

using testing::BundledModel;
using testing::KernelFromText;

std::vector<Cycles> Totals(const Kernel& kernel, const MachineModel& model) {
  return ComputeKernelPressure(kernel, model).total.cycles;
}

TEST(PortPressureVectorTest, AddSpreadsOverTheGroup) {
  auto v = PortPressureVector::Zero({"A", "B", "C", "D"});
  v.Add({{Cycles(1), {"A", "B", "C", "D"}}});
  for (const char* p : {"A", "B", "C", "D"}) EXPECT_EQ(v.at(p), Cycles(1, 4));
  v.Add({{Cycles(1), {"A"}}});
  EXPECT_EQ(v.Max(), Cycles(5, 4));
  EXPECT_THROW(v.Add({{Cycles(1), {"Z"}}}), Error);
  EXPECT_THROW(v.at("Z"), Error);
}

TEST(KernelPressureTest, GaussSeidelTotals) {
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto totals = Totals(kernel, BundledModel("tx2"));
  // [PAPER] port sums; 59/6 [DERIVED] as 17 x 0.5 + 4 x 1/3.
  const std::vector<std::string> expected = {"9.83", "9.83", "1.33", "8.00", "8.00", "4.00"};
  ASSERT_EQ(totals.size(), expected.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    EXPECT_EQ(FormatFixed(totals[i], 2), expected[i]) << "port " << i;
  }
  EXPECT_EQ(totals[0], Cycles(59, 6));
}

TEST(KernelPressureTest, EmptyKernelIsZero) {
  Kernel kernel;
  kernel.isa = Isa::kAArch64;
  const auto result = ComputeKernelPressure(kernel, BundledModel("tx2"));
  EXPECT_TRUE(result.per_line.empty());
  for (const auto& c : result.total.cycles) EXPECT_EQ(c, Cycles(0));
  EXPECT_EQ(ThroughputBound(result.total, 1), Cycles(0));
}

TEST(KernelPressureTest, TwoIndependentAdds) {
  const Kernel kernel = KernelFromText("fadd d0, d1, d2\nfadd d3, d4, d5\n", Isa::kAArch64);
  const auto result = ComputeKernelPressure(kernel, BundledModel("tx2"));
  EXPECT_EQ(result.total.at("P0"), Cycles(1));
  EXPECT_EQ(result.total.at("P1"), Cycles(1));
  EXPECT_EQ(result.total.at("P3"), Cycles(0));
}

TEST(KernelPressureTest, UnknownFormsScoreZeroWithWarning) {
  const Kernel kernel = KernelFromText("frobnicate x0, x1\n", Isa::kAArch64);
  const auto forms = ResolveKernel(kernel, BundledModel("tx2"));
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_FALSE(forms[0].found);
  EXPECT_TRUE(std::any_of(forms[0].warnings.begin(), forms[0].warnings.end(),
                          [](const std::string& w) {
                            return w.find("no database entry") != std::string::npos;
                          }));
  const auto result = ComputeKernelPressure(forms, BundledModel("tx2"));
  EXPECT_EQ(result.total.Max(), Cycles(0));
}

TEST(KernelPressureTest, SplitFormsCombineLoadAndCompute) {
  const MachineModel& clx = BundledModel("clx");
  const auto form = ResolveForm(ParseLine("vaddsd 8(%rdx), %xmm1, %xmm2", 1, Isa::kX86), clx);
  EXPECT_TRUE(form.split);
  EXPECT_EQ(form.latency, clx.load_latency + Cycles(4));
  EXPECT_EQ(form.load_latency + form.compute_latency, form.latency);
  EXPECT_EQ(TotalPressure(form.pressure), Cycles(3));
}

TEST(ThroughputBoundTest, MaxOverPortsDividedByUnroll) {
  const Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto total = ComputeKernelPressure(kernel, BundledModel("tx2")).total;
  // [PAPER]
  EXPECT_EQ(FormatFixed(ThroughputBound(total, 4), 2), "2.46");
  EXPECT_EQ(ThroughputBound(total, 1), total.Max());
  EXPECT_THROW(ThroughputBound(total, 0), Error);
}

TEST(ThroughputPropertyTest, PermutationInvariance) {
  const MachineModel& tx2 = BundledModel("tx2");
  Kernel kernel = testing::MarkedKernel("gauss_seidel.tx2.s", Isa::kAArch64);
  const auto reference = Totals(kernel, tx2);
  std::mt19937 rng(20261016);
  for (int round = 0; round < 50; ++round) {
    std::shuffle(kernel.forms.begin(), kernel.forms.end(), rng);
    EXPECT_EQ(Totals(kernel, tx2), reference);
  }
}

TEST(ThroughputPropertyTest, AddingAnInstructionNeverDecreasesAPort) {
  const MachineModel& clx = BundledModel("clx");
  const auto corpus = ParseFile(ReadTextFile(testing::DataPath("corpus.x86.s")), Isa::kX86);
  Kernel kernel;
  kernel.isa = Isa::kX86;
  auto previous = Totals(kernel, clx);
  for (const auto& form : corpus) {
    kernel.forms.push_back(form);
    const auto now = Totals(kernel, clx);
    for (std::size_t p = 0; p < now.size(); ++p) ASSERT_GE(now[p], previous[p]);
    previous = now;
  }
}

TEST(ThroughputPropertyTest, ExactAccumulationOfThirds) {
  std::string text;
  for (int i = 0; i < 10000; ++i) text += "add x1, x2, 3\n";
  const Kernel kernel = KernelFromText(text, Isa::kAArch64);
  const auto total = ComputeKernelPressure(kernel, BundledModel("tx2")).total;
  // [TRIVIAL] 10^4 x 1/3.
  EXPECT_EQ(total.at("P0"), Cycles(10000, 3));
  EXPECT_EQ(total.at("P1"), Cycles(10000, 3));
  EXPECT_EQ(total.at("P2"), Cycles(10000, 3));
  EXPECT_EQ(total.at("P0") * Cycles(3), Cycles(10000));
}

}  // namespace
}  // namespace incore
