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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "incore/bench.h"
#include "incore/parser.h"
#include "incore/report.h"

#ifndef INCORE_DEFAULT_MODEL_DIR
#define INCORE_DEFAULT_MODEL_DIR "data/models"
#endif

namespace incore {
namespace {

namespace fs = std::filesystem;

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("cannot write '" + path + "'");
}

std::pair<int, int> ParseLineRange(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const int first = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    const int last = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {first, last};
  } catch (const std::logic_error&) {
    throw Error("invalid line range '" + text + "' (expected <first>:<last>)");
  }
}

struct AnalyzeOptions {
  std::string file;
  std::string arch;
  std::string isa;
  int unroll = 1;
  std::string export_graph;
  std::string lines;
  std::string format = "text";
};

int RunAnalyze(const AnalyzeOptions& o, std::ostream& out) {
  const std::string text = ReadTextFile(o.file);
  Isa isa;
  if (!o.isa.empty()) {
    isa = *ParseIsa(o.isa);
  } else {
    isa = DetectIsa(text);
  }
  const MachineModel model = ResolveModel(o.arch);
  const auto forms = ParseFile(text, isa);
  Kernel kernel;
  if (!o.lines.empty()) {
    const auto [first, last] = ParseLineRange(o.lines);
    kernel = SelectLines(forms, isa, first, last);
  } else {
    kernel = FindMarkers(forms, isa);
  }
  if (kernel.instruction_count() == 0) throw Error("the selected kernel contains no instructions");
  const Analysis analysis = AnalyzeKernel(kernel, model, o.unroll);
  if (!o.export_graph.empty()) WriteFile(o.export_graph, ExportGraph(analysis));
  out << (o.format == "structured" ? RenderStructured(analysis.report)
                                   : RenderTable(analysis.report));
  return 0;
}

struct BenchGenOptions {
  std::string form;
  std::string isa;
  std::string mode = "latency";
  int instances = 8;
  bool no_markers = false;
  std::string output;
};

int RunBenchGen(const BenchGenOptions& o, std::ostream& out, std::ostream& err) {
  BenchOptions options;
  options.instances = o.instances;
  options.markers = !o.no_markers;
  const BenchKernel k =
      GenerateBench(ParseFormTemplate(o.form),
                    o.mode == "throughput" ? BenchMode::kThroughput : BenchMode::kLatency,
                    *ParseIsa(o.isa), options);
  for (const auto& note : k.notes) err << "note: " << note << "\n";
  if (o.output.empty()) {
    out << k.assembly;
  } else {
    WriteFile(o.output, k.assembly);
  }
  return 0;
}

struct DbImportOptions {
  std::string arch;
  std::vector<std::string> files;
  bool force = false;
  std::string output;
};

int RunDbImport(const DbImportOptions& o, std::ostream& out) {
  const MachineModel model = ResolveModel(o.arch);
  std::vector<MeasurementRecord> records;
  for (const auto& file : o.files) {
    auto parsed = ParseMeasurements(ReadTextFile(file), fs::path(file).filename().string());
    records.insert(records.end(), parsed.begin(), parsed.end());
  }
  const ImportResult result = ImportMeasurements(records, model, o.force);
  for (const auto& change : result.changes) out << change.message << "\n";
  if (!o.output.empty()) {
    StoreModel(result.model, o.output);
    out << "wrote " << o.output << "\n";
  } else {
    out << "dry run: pass --output to write the updated model\n";
  }
  return result.has_conflicts() ? 2 : 0;
}

}  // namespace

std::vector<std::string> ModelSearchPath() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("INCORE_MODEL_PATH")) {
    std::stringstream list(env);
    std::string dir;
    while (std::getline(list, dir, ':')) {
      if (!dir.empty()) dirs.push_back(dir);
    }
  }
  dirs.push_back(INCORE_DEFAULT_MODEL_DIR);
  return dirs;
}

std::vector<std::string> BundledModels() {
  std::set<std::string> names;
  for (const auto& dir : ModelSearchPath()) {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (entry.path().extension() == ".yml") names.insert(entry.path().stem().string());
    }
  }
  return {names.begin(), names.end()};
}

MachineModel ResolveModel(const std::string& arch) {
  if (arch.empty()) throw Error("no architecture given (--arch)");
  if (fs::is_regular_file(arch)) return LoadModel(arch);
  const std::string lower = [&] {
    std::string s = arch;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  }();
  for (const auto& dir : ModelSearchPath()) {
    const fs::path candidate = fs::path(dir) / (lower + ".yml");
    if (fs::is_regular_file(candidate)) return LoadModel(candidate.string());
  }
  std::string available;
  for (const auto& name : BundledModels()) available += (available.empty() ? "" : ", ") + name;
  throw Error("unknown architecture '" + arch + "'; available models: " +
              (available.empty() ? "(none found)" : available));
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"In-core performance analyzer for assembly loop kernels", "incore"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "incore 0.1.0");

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Analyze a marked loop kernel");
  a->add_option("file", analyze.file, "Assembly file")->required();
  a->add_option("--arch", analyze.arch, "Machine model file or bundled model name")->required();
  a->add_option("--isa", analyze.isa, "Instruction set (default: detect)")
      ->check(CLI::IsMember({"x86", "aarch64"}));
  a->add_option("--unroll", analyze.unroll, "Source iterations per assembly iteration")
      ->check(CLI::PositiveNumber);
  a->add_option("--export-graph", analyze.export_graph, "Write the dependency graph (DOT)");
  a->add_option("--lines", analyze.lines, "Analyze lines <first>:<last> instead of markers");
  a->add_option("--format", analyze.format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}));

  BenchGenOptions bench;
  auto* b = app.add_subcommand("bench-gen", "Generate a latency or throughput benchmark");
  b->add_option("form", bench.form, "Instruction form, e.g. \"fadd fp64,fp64,fp64\"")
      ->required();
  b->add_option("--isa", bench.isa, "Instruction set")
      ->required()
      ->check(CLI::IsMember({"x86", "aarch64"}));
  b->add_option("--mode", bench.mode, "Benchmark kind")
      ->check(CLI::IsMember({"latency", "throughput"}));
  b->add_option("--instances", bench.instances, "Instances per loop iteration")
      ->check(CLI::PositiveNumber);
  b->add_flag("--no-markers", bench.no_markers, "Omit the analyzer byte markers");
  b->add_option("-o,--output", bench.output, "Output file (default: stdout)");

  DbImportOptions import;
  auto* d = app.add_subcommand("db-import", "Import measurement records into a model");
  d->add_option("--arch", import.arch, "Machine model file or bundled model name")->required();
  d->add_option("measurements", import.files, "Measurement record files")->required();
  d->add_flag("--force", import.force, "Overwrite conflicting database values");
  d->add_option("-o,--output", import.output, "Write the updated model here");

  auto* m = app.add_subcommand("models", "List bundled machine models");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (a->parsed()) return RunAnalyze(analyze, out);
    if (b->parsed()) return RunBenchGen(bench, out, err);
    if (d->parsed()) return RunDbImport(import, out);
    if (m->parsed()) {
      for (const auto& name : BundledModels()) out << name << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace incore
