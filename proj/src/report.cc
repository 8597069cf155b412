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

#include "incore/report.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace incore {
namespace {

using Json = nlohmann::json;

std::string DisplaySource(const std::string& source) {
  std::string out;
  bool space = false;
  for (char c : source) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string PadLeft(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : std::string(width - text.size(), ' ') + text;
}

std::string PadRight(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

std::string PressureCell(Cycles value) { return value == Cycles(0) ? "" : FormatFixed(value, 2); }

std::string RationalText(Cycles value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

Cycles RationalFrom(const Json& node) { return ParseCycles(node.get<std::string>()); }

Json OptionalCycles(const std::optional<Cycles>& value) {
  return value ? Json(RationalText(*value)) : Json(nullptr);
}

}  // namespace

bool AnalysisReport::bracket_anomaly() const {
  if (!has_lcd) return false;
  return !(tp_per_asm_iter <= lcd_total && lcd_total <= cp_total);
}

Analysis AnalyzeKernel(const Kernel& kernel, const MachineModel& model, int unroll) {
  if (unroll < 1) throw Error("unroll factor must be at least 1");
  if (kernel.isa != model.isa) {
    throw Error("machine model '" + model.arch_name + "' is for " +
                std::string(IsaName(model.isa)) + " but the kernel is " +
                std::string(IsaName(kernel.isa)));
  }
  Analysis a;
  a.forms = ResolveKernel(kernel, model);
  a.pressure = ComputeKernelPressure(a.forms, model);
  a.cp_dag = BuildDag(a.forms, 1, WritebackCoupling::kCoupled);
  a.critical_path = CriticalPath(a.cp_dag);
  a.lcd_dag = BuildDag(a.forms, 2, WritebackCoupling::kDecoupled);
  a.lcds = FindLcds(a.lcd_dag);

  AnalysisReport& r = a.report;
  r.arch_name = model.arch_name;
  r.isa = model.isa;
  r.unroll = unroll;
  r.ports = model.ports;
  r.port_sums = a.pressure.total.cycles;
  r.tp_per_asm_iter = a.pressure.total.Max();
  r.tp_per_src_iter = ThroughputBound(a.pressure.total, unroll);
  r.cp_total = a.critical_path.total_latency;
  const auto cp_marks = MarkReportPaths(a.cp_dag, a.critical_path);
  std::map<int, Cycles> lcd_marks;
  if (!a.lcds.empty()) {
    r.has_lcd = true;
    r.lcd_total = a.lcds.front().total_latency;
    lcd_marks = MarkReportPaths(a.lcd_dag, a.lcds.front());
  }
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    const ResolvedForm& f = a.forms[i];
    ReportLine line;
    line.line_number = f.form.line_number;
    line.source = DisplaySource(f.form.source);
    line.instruction = f.is_instruction;
    line.pressure = a.pressure.per_line[i].cycles;
    if (auto it = cp_marks.find(line.line_number); it != cp_marks.end()) line.cp = it->second;
    if (auto it = lcd_marks.find(line.line_number); it != lcd_marks.end()) line.lcd = it->second;
    r.lines.push_back(std::move(line));
    r.warnings.insert(r.warnings.end(), f.warnings.begin(), f.warnings.end());
  }
  if (kernel.instruction_count() == 0) r.warnings.push_back("kernel contains no instructions");
  return a;
}

AnalysisReport Analyze(const Kernel& kernel, const MachineModel& model, int unroll) {
  return AnalyzeKernel(kernel, model, unroll).report;
}

std::string SummaryLine(const AnalysisReport& r) {
  return "TP " + FormatFixed(r.tp_per_src_iter, 2) + " | LCD " +
         (r.has_lcd ? FormatLatency(r.lcd_per_src_iter()) : std::string("none")) + " | CP " +
         FormatLatency(r.cp_per_src_iter()) + " cy/it";
}

std::string RenderTable(const AnalysisReport& r) {
  const std::int64_t unroll = r.unroll;
  std::vector<std::size_t> port_width;
  for (const auto& port : r.ports) port_width.push_back(std::max<std::size_t>(4, port.size()));
  std::size_t lcd_width = 4;
  std::size_t cp_width = 4;
  std::size_t ln_width = 2;
  auto widen = [](std::size_t& w, const std::string& s) { w = std::max(w, s.size()); };
  for (const auto& line : r.lines) {
    if (line.lcd) widen(lcd_width, FormatLatency(*line.lcd));
    if (line.cp) widen(cp_width, FormatLatency(*line.cp));
    widen(ln_width, std::to_string(line.line_number));
  }
  if (r.has_lcd) widen(lcd_width, FormatLatency(r.lcd_total));
  widen(cp_width, FormatLatency(r.cp_total));
  for (std::size_t p = 0; p < r.ports.size(); ++p) {
    widen(port_width[p], FormatFixed(r.port_sums[p], 2));
  }

  auto row = [&](const std::vector<std::string>& ports, const std::string& lcd,
                 const std::string& cp, const std::string& ln, const std::string& text) {
    std::string out;
    for (std::size_t p = 0; p < ports.size(); ++p) {
      if (p) out += ' ';
      out += PadLeft(ports[p], port_width[p]);
    }
    out += " | " + PadLeft(lcd, lcd_width) + " | " + PadLeft(cp, cp_width) + " | " +
           PadLeft(ln, ln_width) + " | " + text;
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };

  std::ostringstream os;
  os << "Architecture: " << r.arch_name << " (" << IsaName(r.isa) << "), unroll " << r.unroll
     << "\n\n";
  const std::string header = row(r.ports, "LCD", "CP", "LN", "Assembly Instructions");
  const std::size_t rule = header.size() - 1;
  os << header;
  os << std::string(rule, '-') << "\n";
  for (const auto& line : r.lines) {
    std::vector<std::string> cells;
    for (const auto& c : line.pressure) cells.push_back(PressureCell(c));
    os << row(cells, line.lcd ? FormatLatency(*line.lcd) : "",
              line.cp ? FormatLatency(*line.cp) : "", std::to_string(line.line_number),
              line.source);
  }
  os << std::string(rule, '-') << "\n";
  std::vector<std::string> sums;
  std::vector<std::string> per_iter;
  for (const auto& c : r.port_sums) {
    sums.push_back(FormatFixed(c, 2));
    per_iter.push_back(FormatFixed(c / unroll, 2));
  }
  os << row(sums, r.has_lcd ? FormatLatency(r.lcd_total) : "", FormatLatency(r.cp_total), "",
            "sum (" + std::to_string(r.unroll) + "x unrolled)");
  os << row(per_iter, r.has_lcd ? FormatLatency(r.lcd_per_src_iter()) : "",
            FormatLatency(r.cp_per_src_iter()), "", "per high-level iteration");
  os << "\n";
  if (!r.warnings.empty()) {
    os << "Warnings:\n";
    for (const auto& w : r.warnings) os << "  - " << w << "\n";
    os << "\n";
  }
  if (!r.has_lcd) os << "No loop-carried dependency found; the throughput bound applies.\n";
  if (r.bracket_anomaly()) {
    os << "*** ANOMALY: the prediction bracket TP <= LCD <= CP does not hold ***\n";
  }
  os << SummaryLine(r) << "\n";
  return os.str();
}

std::string RenderStructured(const AnalysisReport& r) {
  Json doc;
  doc["format"] = "incore-report";
  doc["version"] = kReportFormatVersion;
  doc["arch"] = r.arch_name;
  doc["isa"] = std::string(IsaName(r.isa));
  doc["unroll"] = r.unroll;
  doc["ports"] = r.ports;
  Json lines = Json::array();
  for (const auto& line : r.lines) {
    Json pressure = Json::array();
    for (const auto& c : line.pressure) pressure.push_back(RationalText(c));
    lines.push_back({{"line", line.line_number},
                     {"source", line.source},
                     {"instruction", line.instruction},
                     {"pressure", pressure},
                     {"lcd", OptionalCycles(line.lcd)},
                     {"cp", OptionalCycles(line.cp)}});
  }
  doc["lines"] = lines;
  Json sums = Json::array();
  for (const auto& c : r.port_sums) sums.push_back(RationalText(c));
  doc["port_sums"] = sums;
  doc["tp_per_asm_iter"] = RationalText(r.tp_per_asm_iter);
  doc["tp_per_src_iter"] = RationalText(r.tp_per_src_iter);
  doc["cp_total"] = RationalText(r.cp_total);
  doc["has_lcd"] = r.has_lcd;
  doc["lcd_total"] = RationalText(r.lcd_total);
  doc["warnings"] = r.warnings;
  doc["summary"] = {{"tp", FormatFixed(r.tp_per_src_iter, 2)},
                    {"lcd", r.has_lcd ? Json(FormatLatency(r.lcd_per_src_iter())) : Json(nullptr)},
                    {"cp", FormatLatency(r.cp_per_src_iter())},
                    {"anomaly", r.bracket_anomaly()}};
  return doc.dump(2) + "\n";
}

AnalysisReport ParseStructured(const std::string& text) {
  AnalysisReport r;
  try {
    const Json doc = Json::parse(text);
    if (doc.value("format", "") != "incore-report") throw Error("not an incore report");
    if (doc.at("version").get<int>() != kReportFormatVersion) {
      throw Error("unsupported report version " + doc.at("version").dump());
    }
    r.arch_name = doc.at("arch").get<std::string>();
    const auto isa = ParseIsa(doc.at("isa").get<std::string>());
    if (!isa) throw Error("unknown isa in report");
    r.isa = *isa;
    r.unroll = doc.at("unroll").get<int>();
    r.ports = doc.at("ports").get<std::vector<std::string>>();
    for (const auto& node : doc.at("lines")) {
      ReportLine line;
      line.line_number = node.at("line").get<int>();
      line.source = node.at("source").get<std::string>();
      line.instruction = node.at("instruction").get<bool>();
      for (const auto& c : node.at("pressure")) line.pressure.push_back(RationalFrom(c));
      if (!node.at("lcd").is_null()) line.lcd = RationalFrom(node.at("lcd"));
      if (!node.at("cp").is_null()) line.cp = RationalFrom(node.at("cp"));
      r.lines.push_back(std::move(line));
    }
    for (const auto& c : doc.at("port_sums")) r.port_sums.push_back(RationalFrom(c));
    r.tp_per_asm_iter = RationalFrom(doc.at("tp_per_asm_iter"));
    r.tp_per_src_iter = RationalFrom(doc.at("tp_per_src_iter"));
    r.cp_total = RationalFrom(doc.at("cp_total"));
    r.has_lcd = doc.at("has_lcd").get<bool>();
    r.lcd_total = RationalFrom(doc.at("lcd_total"));
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed structured report: ") + e.what());
  }
  return r;
}

std::string ExportGraph(const Analysis& a) {
  const PathResult lcd = a.lcds.empty() ? PathResult{} : a.lcds.front();
  return ExportDot(a.cp_dag, a.critical_path, lcd, &a.lcd_dag);
}

}  // namespace incore
