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

#ifndef INCORE_BENCH_H_
#define INCORE_BENCH_H_

#include <optional>
#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/instruction.h"
#include "incore/machine_model.h"

namespace incore {

// Mnemonic plus operand classes, as keyed in the instruction database.
struct FormTemplate {
  std::string mnemonic;
  std::vector<std::string> operands;

  // "fadd-fp64_fp64_fp64"; zero operands give "nop-none".
  std::string Key() const;
  bool operator==(const FormTemplate&) const = default;
};

// Accepts "fadd fp64,fp64,fp64" and "fadd-fp64_fp64_fp64".
FormTemplate ParseFormTemplate(const std::string& text);

enum class BenchMode { kLatency, kThroughput };

struct BenchOptions {
  // Number of instances; throughput kernels use at least 8.
  int instances = 8;
  // Enclose the instances with the analyzer's byte markers.
  bool markers = true;
};

struct BenchKernel {
  FormTemplate target;
  BenchMode mode = BenchMode::kLatency;
  Isa isa = Isa::kX86;
  int instances = 0;
  // The generated instances, one per line.
  std::string body;
  // Self-contained assembly file: function, loop and markers around `body`.
  std::string assembly;
  std::vector<std::string> registers;
  std::vector<std::string> notes;
};

BenchKernel GenerateBench(const FormTemplate& target, BenchMode mode, Isa isa,
                          const BenchOptions& options = {});

enum class Metric { kLatency, kInverseThroughput };

struct MeasurementRecord {
  FormTemplate form;
  Metric metric = Metric::kLatency;
  Cycles value{0};
  // Ports the form may issue to; the pressure is derived from them.
  std::vector<std::string> ports;
  std::string source;

  bool operator==(const MeasurementRecord&) const = default;
};

// One record per line: "<mnemonic>-<signature>-<metric>: <value>", where the
// metric is LT/latency or TP/inverse_throughput. Optional trailing fields:
// "(clock cycles)", "ports=P0,P1", "source=<tag>". '#' starts a comment.
std::vector<MeasurementRecord> ParseMeasurements(const std::string& text,
                                                 const std::string& source_tag = "");

std::string FormatMeasurement(const MeasurementRecord& record);

struct ChangeLogEntry {
  enum class Kind { kCreated, kUpdated, kUnchanged, kConflict };
  Kind kind = Kind::kUnchanged;
  std::string key;
  Metric metric = Metric::kLatency;
  std::optional<Cycles> old_value;
  Cycles new_value{0};
  std::string message;
};

struct ImportResult {
  MachineModel model;
  std::vector<ChangeLogEntry> changes;

  bool has_conflicts() const;
};

// Conflicting values are reported and left alone unless `force` is set.
// Throws Error for ports the model does not declare.
ImportResult ImportMeasurements(const std::vector<MeasurementRecord>& records,
                                const MachineModel& model, bool force = false);

}  // namespace incore

#endif  // INCORE_BENCH_H_
