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

#include "incore/resolve.h"

#include <algorithm>

#include "incore/parser.h"

namespace incore {
namespace {

DbEntry LoadEntry(const MachineModel& model) {
  DbEntry entry;
  entry.mnemonic = "load";
  entry.operands = {"mem"};
  entry.latency = model.load_latency;
  entry.inverse_throughput = model.load_throughput;
  entry.port_pressure = model.load_pressure;
  return entry;
}

std::string Where(const InstructionForm& form) {
  return "line " + std::to_string(form.line_number) + ": ";
}

}  // namespace

std::string SignatureText(const InstructionForm& form) {
  std::string text = form.mnemonic + "(";
  const auto signature = OperandSignature(form);
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (i) text += ",";
    text += signature[i];
  }
  return text + ")";
}

ResolvedForm ResolveForm(const InstructionForm& form, const MachineModel& model) {
  ResolvedForm out;
  out.form = form;
  out.warnings = form.warnings;
  out.is_instruction = form.is_instruction();
  if (!out.is_instruction) {
    out.found = true;
    return out;
  }
  out.flow = GetDataFlow(form, model.isa);
  out.warnings.insert(out.warnings.end(), out.flow.warnings.begin(),
                      out.flow.warnings.end());

  const auto split = SplitMemoryForm(form, model.isa);
  const auto direct = Lookup(model, form);
  if (split) {
    out.split = true;
    out.stores_result = split->stores_result;
    out.load_latency = model.load_latency;
    if (direct) {
      out.found = true;
      out.entry = *direct;
    } else if (const auto compute = Lookup(model, split->compute_part)) {
      out.found = true;
      out.entry = CombineSplit(LoadEntry(model), *compute);
    }
    if (out.found) {
      out.compute_latency = std::max(Cycles(0), out.entry.latency - out.load_latency);
      out.load_latency = out.entry.latency - out.compute_latency;
    }
  } else if (direct) {
    out.found = true;
    out.entry = *direct;
  }

  if (!out.found) {
    out.entry = DbEntry{};
    out.entry.mnemonic = form.mnemonic;
    out.entry.operands = OperandSignature(form);
    out.load_latency = 0;
    out.warnings.push_back(Where(form) + "no database entry for " + SignatureText(form) +
                           ", scored as 0 cy");
  }
  out.latency = out.entry.latency;
  if (!out.split) out.compute_latency = out.latency;
  out.writeback_latency = out.entry.writeback_latency.value_or(out.entry.latency);
  out.pressure = out.entry.port_pressure;
  if (out.stores_result) {
    out.pressure.insert(out.pressure.end(), model.store_pressure.begin(),
                        model.store_pressure.end());
    out.warnings.push_back(Where(form) +
                           "read-modify-write memory destination; the store is "
                           "costed but carries no dependency edge");
  }
  return out;
}

std::vector<ResolvedForm> ResolveKernel(const Kernel& kernel, const MachineModel& model) {
  std::vector<ResolvedForm> out;
  for (const auto& form : kernel.forms) {
    if (form.kind() == LineKind::kBlank) continue;
    out.push_back(ResolveForm(form, model));
  }
  return out;
}

}  // namespace incore
