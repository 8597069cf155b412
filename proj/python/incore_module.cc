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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "incore/bench.h"
#include "incore/cli.h"
#include "incore/cycles.h"
#include "incore/parser.h"
#include "incore/report.h"

namespace py = pybind11;

namespace incore {
namespace {

Kernel ExtractKernel(const std::string& text, Isa isa, std::optional<std::pair<int, int>> lines) {
  const auto forms = ParseFile(text, isa);
  if (lines) return SelectLines(forms, isa, lines->first, lines->second);
  return FindMarkers(forms, isa);
}

Analysis RunAnalysis(const std::string& text, const std::string& arch, int unroll,
                     std::optional<std::string> isa_name,
                     std::optional<std::pair<int, int>> lines) {
  const MachineModel model = ResolveModel(arch);
  Isa isa = model.isa;
  if (isa_name) {
    const auto parsed = ParseIsa(*isa_name);
    if (!parsed) throw Error("unknown ISA '" + *isa_name + "'");
    isa = *parsed;
  }
  if (isa != model.isa) {
    throw Error("model '" + model.arch_name + "' describes " + std::string(IsaName(model.isa)) +
                " but the input is " + std::string(IsaName(isa)));
  }
  return AnalyzeKernel(ExtractKernel(text, isa, lines), model, unroll);
}

}  // namespace
}  // namespace incore

PYBIND11_MODULE(_core, m) {
  using namespace incore;
  m.doc() = "Port-pressure and dependency analysis of assembly loop kernels.";
  py::register_exception<Error>(m, "IncoreError", PyExc_ValueError);

  m.def(
      "analyze",
      [](const std::string& text, const std::string& arch, int unroll,
         std::optional<std::string> isa, std::optional<std::pair<int, int>> lines,
         const std::string& format) {
        const AnalysisReport report = RunAnalysis(text, arch, unroll, isa, lines).report;
        if (format == "text") return RenderTable(report);
        if (format == "structured") return RenderStructured(report);
        throw Error("unknown format '" + format + "'");
      },
      py::arg("text"), py::arg("arch"), py::arg("unroll") = 1, py::arg("isa") = py::none(),
      py::arg("lines") = py::none(), py::arg("format") = "structured",
      "Analyzes the marked kernel (or the given line range) of `text`.");

  m.def(
      "export_graph",
      [](const std::string& text, const std::string& arch, int unroll,
         std::optional<std::string> isa, std::optional<std::pair<int, int>> lines) {
        return ExportGraph(RunAnalysis(text, arch, unroll, isa, lines));
      },
      py::arg("text"), py::arg("arch"), py::arg("unroll") = 1, py::arg("isa") = py::none(),
      py::arg("lines") = py::none(), "Dependency graph of the kernel in DOT syntax.");

  m.def(
      "bench_gen",
      [](const std::string& form, const std::string& isa_name, const std::string& mode,
         int instances, bool markers) {
        const auto isa = ParseIsa(isa_name);
        if (!isa) throw Error("unknown ISA '" + isa_name + "'");
        BenchMode bench_mode;
        if (mode == "latency") {
          bench_mode = BenchMode::kLatency;
        } else if (mode == "throughput") {
          bench_mode = BenchMode::kThroughput;
        } else {
          throw Error("unknown mode '" + mode + "'");
        }
        const BenchKernel k =
            GenerateBench(ParseFormTemplate(form), bench_mode, *isa, {instances, markers});
        py::dict out;
        out["key"] = k.target.Key();
        out["instances"] = k.instances;
        out["body"] = k.body;
        out["assembly"] = k.assembly;
        out["registers"] = k.registers;
        out["notes"] = k.notes;
        return out;
      },
      py::arg("form"), py::arg("isa"), py::arg("mode") = "latency", py::arg("instances") = 8,
      py::arg("markers") = true, "Generates a micro-benchmark kernel for one instruction form.");

  m.def("models", &BundledModels, "Names of the models on the search path.");
  m.def("model_search_path", &ModelSearchPath);
  m.def(
      "model_yaml", [](const std::string& arch) { return SerializeModel(ResolveModel(arch)); },
      py::arg("arch"), "The resolved machine model in its file format.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int status = RunCli(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line interface; returns (status, stdout, stderr).");
  m.def(
      "format_cycles", [](const std::string& value) { return FormatCycles(ParseCycles(value)); },
      py::arg("value"));
}
