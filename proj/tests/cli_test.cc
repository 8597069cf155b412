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

#include "incore/cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "incore/parser.h"
#include "incore/report.h"
#include "test_support.h"

namespace incore {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = RunCli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string LastLine(const std::string& text) {
  std::string trimmed = text;
  while (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
  return trimmed.substr(trimmed.rfind('\n') + 1);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    setenv("INCORE_MODEL_PATH", INCORE_TEST_MODEL_DIR, 1);
    dir_ = fs::temp_directory_path() / ("incore_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Temp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, AnalyzeGaussSeidel) {
  const CliRun r = Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "tx2", "--unroll", "4"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(LastLine(r.out), "TP 2.46 | LCD 18.0 | CP 25.0 cy/it");
  // [DERIVED] golden file frozen from a reviewed run; rows match kTable in report_test.
  EXPECT_EQ(r.out, ReadTextFile(DataPath("gauss_seidel.tx2.golden.txt")));
}

TEST_F(CliTest, AnalyzeAcceptsAModelFilePath) {
  const CliRun r = Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch",
                     std::string(INCORE_TEST_MODEL_DIR) + "/tx2.yml", "--unroll", "4",
                     "--isa", "aarch64"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(LastLine(r.out), "TP 2.46 | LCD 18.0 | CP 25.0 cy/it");
}

TEST_F(CliTest, MissingMarkers) {
  const CliRun r = Cli({"analyze", DataPath("corpus.x86.s"), "--arch", "clx"});
  EXPECT_NE(r.status, 0);
  EXPECT_EQ(r.err, "error: start marker not found\n");
}

TEST_F(CliTest, LineRangeInsteadOfMarkers) {
  const CliRun r = Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "tx2", "--unroll",
                     "4", "--lines", "519:557"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(LastLine(r.out), "TP 2.46 | LCD 18.0 | CP 25.0 cy/it");
  EXPECT_NE(Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "tx2", "--lines", "x"})
                .status,
            0);
}

TEST_F(CliTest, UnknownArchListsModels) {
  const CliRun r = Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "pentium"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("unknown architecture 'pentium'"), std::string::npos);
  EXPECT_NE(r.err.find("clx, tx2, zen"), std::string::npos);
}

TEST_F(CliTest, StructuredFormatAndGraphExport) {
  const std::string dot = Temp("gs.dot");
  const CliRun r = Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "tx2", "--unroll",
                     "4", "--format", "structured", "--export-graph", dot});
  ASSERT_EQ(r.status, 0) << r.err;
  const AnalysisReport report = ParseStructured(r.out);
  EXPECT_EQ(report.cp_per_src_iter(), Cycles(25));
  EXPECT_EQ(report.lcd_per_src_iter(), Cycles(18));
  const std::string graph = ReadTextFile(dot);
  EXPECT_EQ(graph.rfind("digraph", 0), 0u);
  EXPECT_NE(graph.find("fillcolor=orange"), std::string::npos);
}

TEST_F(CliTest, BadArguments) {
  EXPECT_NE(Cli({}).status, 0);
  EXPECT_NE(Cli({"analyze"}).status, 0);
  EXPECT_NE(Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "tx2", "--unroll", "0"})
                .status,
            0);
  EXPECT_NE(Cli({"analyze", "/nonexistent.s", "--arch", "tx2"}).status, 0);
  EXPECT_NE(Cli({"analyze", DataPath("gauss_seidel.tx2.s"), "--arch", "clx"}).status, 0);
}

TEST_F(CliTest, ModelsSubcommand) {
  const CliRun r = Cli({"models"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "clx\ntx2\nzen\n");
}

TEST_F(CliTest, BenchGenToFileAndStdout) {
  const CliRun r = Cli({"bench-gen", "fadd fp64,fp64,fp64", "--isa", "aarch64", "--mode",
                     "throughput"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("fadd\td17, d0, d1"), std::string::npos);
  const std::string file = Temp("bench.s");
  EXPECT_EQ(Cli({"bench-gen", "vaddpd vec256,vec256,vec256", "--isa", "x86", "-o", file}).status,
            0);
  const auto forms = ParseFile(ReadTextFile(file), Isa::kX86);
  EXPECT_EQ(FindMarkers(forms, Isa::kX86).instruction_count(), 8u);
  const CliRun manual = Cli({"bench-gen", "addpd mem,vec128", "--isa", "x86"});
  EXPECT_EQ(manual.status, 1);
  EXPECT_NE(manual.err.find("manual benchmark required"), std::string::npos);
}

TEST_F(CliTest, DbImportDryRunConflictAndWrite) {
  const std::string records = Temp("tx2.txt");
  std::ofstream(records) << "fadd-fp64_fp64_fp64-latency: 6.0\n"
                            "frecpe-fp64_fp64-latency: 5\n";
  const CliRun dry = Cli({"db-import", "--arch", "tx2", records});
  EXPECT_EQ(dry.status, 0) << dry.err;
  EXPECT_NE(dry.out.find("unchanged fadd"), std::string::npos);
  EXPECT_NE(dry.out.find("created frecpe"), std::string::npos);
  EXPECT_NE(dry.out.find("dry run"), std::string::npos);

  const std::string updated = Temp("tx2.updated.yml");
  EXPECT_EQ(Cli({"db-import", "--arch", "tx2", records, "-o", updated}).status, 0);
  const MachineModel model = LoadModel(updated);
  EXPECT_NE(FindEntry(model, "frecpe", {"fp64", "fp64"}), nullptr);

  const std::string conflict = Temp("conflict.txt");
  std::ofstream(conflict) << "fadd-fp64_fp64_fp64-latency: 5\n";
  const CliRun c = Cli({"db-import", "--arch", "tx2", conflict});
  EXPECT_EQ(c.status, 2);
  EXPECT_NE(c.out.find("conflict fadd"), std::string::npos);
  EXPECT_EQ(Cli({"db-import", "--arch", "tx2", conflict, "--force"}).status, 0);
}

}  // namespace
}  // namespace incore
