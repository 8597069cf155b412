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

#ifndef INCORE_RESOLVE_H_
#define INCORE_RESOLVE_H_

#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/instruction.h"
#include "incore/machine_model.h"
#include "incore/semantics.h"

namespace incore {

// A kernel line joined with its data flow and database numbers.
struct ResolvedForm {
  InstructionForm form;
  DataFlow flow;
  bool is_instruction = false;
  // Database entry found (directly or through a split).
  bool found = false;
  // Compute form with a memory source, costed as load + compute.
  bool split = false;
  // x86 read-modify-write memory destination.
  bool stores_result = false;
  DbEntry entry;
  Cycles latency{0};
  // Split forms: latency of each part. latency == load_latency + compute_latency.
  Cycles load_latency{0};
  Cycles compute_latency{0};
  Cycles writeback_latency{0};
  PortPressureList pressure;
  std::vector<std::string> warnings;
};

ResolvedForm ResolveForm(const InstructionForm& form, const MachineModel& model);

// Resolves every non-blank line of the kernel.
std::vector<ResolvedForm> ResolveKernel(const Kernel& kernel, const MachineModel& model);

std::string SignatureText(const InstructionForm& form);

}  // namespace incore

#endif  // INCORE_RESOLVE_H_
