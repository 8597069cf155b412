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

#ifndef INCORE_MACHINE_MODEL_H_
#define INCORE_MACHINE_MODEL_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/instruction.h"

namespace incore {

// Cycles spread evenly over a group of ports.
struct PressureItem {
  Cycles cycles;
  std::vector<std::string> ports;

  bool operator==(const PressureItem&) const = default;
};

using PortPressureList = std::vector<PressureItem>;

// One instruction form of the database. Operand classes are
//   <gp|fp|vec|flag><width>   register of that class and width
//   <gp|fp|vec|flag>*         register of that class, any width
//   mem | imm | id | list     memory, immediate, identifier, register list
//   *                         any operand
struct DbEntry {
  std::string mnemonic;
  std::vector<std::string> operands;
  Cycles latency{0};
  Cycles inverse_throughput{0};
  PortPressureList port_pressure;
  // Set when the pressure was derived from inverse_throughput.
  std::vector<std::string> candidate_ports;
  std::optional<Cycles> writeback_latency;
  std::optional<int> uops;

  bool operator==(const DbEntry&) const = default;
};

struct MachineModel {
  int format_version = 1;
  std::string arch_name;
  Isa isa = Isa::kX86;
  std::vector<std::string> ports;
  Cycles load_latency{0};
  // Pressure of the memory read in split forms.
  PortPressureList load_pressure;
  Cycles load_throughput{0};
  // Pressure added for x86 read-modify-write memory destinations.
  PortPressureList store_pressure;
  // Mnemonic -> mnemonic whose entries it shares.
  std::map<std::string, std::string> aliases;
  std::vector<DbEntry> entries;

  bool operator==(const MachineModel&) const = default;
};

inline constexpr int kModelFormatVersion = 1;

MachineModel ParseModel(const std::string& text);
MachineModel LoadModel(const std::string& path);
std::string SerializeModel(const MachineModel& model);
void StoreModel(const MachineModel& model, const std::string& path);

// Throws Error on unknown ports, duplicate keys and non-positive cycles.
void ValidateModel(const MachineModel& model);

// Non-fatal findings, such as total pressure below one cycle.
std::vector<std::string> LintModel(const MachineModel& model);

std::string OperandClass(const Operand& operand);
std::vector<std::string> OperandSignature(const InstructionForm& form);
bool OperandClassMatches(const std::string& pattern, const std::string& actual);

// Exact widths beat width wildcards, which beat the any-operand class.
// x86 size suffixes (b/w/l/q) are stripped when the full mnemonic is missing.
std::optional<DbEntry> Lookup(const MachineModel& model,
                              const InstructionForm& form);
const DbEntry* FindEntry(const MachineModel& model, const std::string& mnemonic,
                         const std::vector<std::string>& operands);

// t/n on each of the n ports.
PortPressureList DerivePressure(Cycles inverse_throughput,
                                const std::vector<std::string>& ports);

// Throughput is the maximum, latency the sum and pressure the union of both
// parts.
DbEntry CombineSplit(const DbEntry& load_entry, const DbEntry& compute_entry);

Cycles TotalPressure(const PortPressureList& pressure);

}  // namespace incore

#endif  // INCORE_MACHINE_MODEL_H_
