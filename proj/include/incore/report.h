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

#ifndef INCORE_REPORT_H_
#define INCORE_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/dependency_graph.h"
#include "incore/instruction.h"
#include "incore/machine_model.h"
#include "incore/throughput.h"

namespace incore {

struct ReportLine {
  int line_number = 0;
  std::string source;
  bool instruction = false;
  // Per port, in AnalysisReport::ports order.
  std::vector<Cycles> pressure;
  std::optional<Cycles> lcd;
  std::optional<Cycles> cp;

  bool operator==(const ReportLine&) const = default;
};

struct AnalysisReport {
  std::string arch_name;
  Isa isa = Isa::kX86;
  int unroll = 1;
  std::vector<std::string> ports;
  std::vector<ReportLine> lines;
  std::vector<Cycles> port_sums;
  Cycles tp_per_asm_iter{0};
  Cycles tp_per_src_iter{0};
  Cycles cp_total{0};
  bool has_lcd = false;
  Cycles lcd_total{0};
  std::vector<std::string> warnings;

  Cycles cp_per_src_iter() const { return cp_total / static_cast<std::int64_t>(unroll); }
  Cycles lcd_per_src_iter() const { return lcd_total / static_cast<std::int64_t>(unroll); }
  // TP <= LCD <= CP fails while an LCD exists.
  bool bracket_anomaly() const;

  bool operator==(const AnalysisReport&) const = default;
};

// Everything computed for one kernel.
struct Analysis {
  AnalysisReport report;
  std::vector<ResolvedForm> forms;
  KernelPressure pressure;
  DependencyDag cp_dag;
  DependencyDag lcd_dag;
  PathResult critical_path;
  std::vector<PathResult> lcds;
};

Analysis AnalyzeKernel(const Kernel& kernel, const MachineModel& model, int unroll);
AnalysisReport Analyze(const Kernel& kernel, const MachineModel& model, int unroll);

std::string RenderTable(const AnalysisReport& report);

// "TP 2.46 | LCD 18.0 | CP 25.0 cy/it"
std::string SummaryLine(const AnalysisReport& report);

inline constexpr int kReportFormatVersion = 1;

// Versioned JSON document; exact values are stored as rational strings.
std::string RenderStructured(const AnalysisReport& report);
AnalysisReport ParseStructured(const std::string& text);

std::string ExportGraph(const Analysis& analysis);

}  // namespace incore

#endif  // INCORE_REPORT_H_
