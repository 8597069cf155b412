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

#ifndef INCORE_SEMANTICS_H_
#define INCORE_SEMANTICS_H_

#include <optional>
#include <string>
#include <vector>

#include "incore/instruction.h"

namespace incore {

// What an instruction form does with its operands.
enum class FormCategory {
  kCompute,    // register arithmetic; may carry a source memory operand
  kMove,       // register/immediate move
  kLoad,       // pure load
  kStore,      // pure store
  kAddress,    // address computation without memory access (lea)
  kCompare,    // writes only flags
  kBranch,
  kOther,      // nop, prefetch, fences
};

struct DataFlow {
  // Canonical register ids, in first-appearance order, without duplicates.
  // `sources` is the union of `data_sources` and `address_sources`.
  std::vector<std::string> sources;
  std::vector<std::string> data_sources;
  // Registers read to form a memory address.
  std::vector<std::string> address_sources;
  std::vector<std::string> destinations;
  // Subset of `destinations` updated through pre/post-index writeback. The
  // written value depends only on the base register.
  std::vector<std::string> writeback_destinations;
  std::vector<MemoryOp> mem_loads;
  std::vector<MemoryOp> mem_stores;
  // The destination is written without reading its previous value even
  // though it appears as a source operand (zeroing idioms, immediate moves).
  bool breaks_dependency = false;
  FormCategory category = FormCategory::kOther;
  bool recognized = true;
  std::vector<std::string> warnings;

  bool ReadsRegister(const std::string& reg) const;
  bool WritesRegister(const std::string& reg) const;
};

DataFlow GetDataFlow(const InstructionForm& form, Isa isa);

// A computing instruction with a memory source, separated into the memory
// read and the register operation that consumes it.
struct SplitForm {
  InstructionForm load_part;     // mnemonic "load", the memory operand only
  InstructionForm compute_part;  // memory operand replaced by a temporary
  // x86 read-modify-write: the result is stored back to memory.
  bool stores_result = false;
};

// Name of the temporary register that carries loaded data into the compute
// part of a split form.
inline constexpr const char* kLoadTemporary = "load.tmp";

// Returns nullopt ("unchanged") for pure loads/stores, register-only forms
// and forms that are not computations.
std::optional<SplitForm> SplitMemoryForm(const InstructionForm& form, Isa isa);

}  // namespace incore

#endif  // INCORE_SEMANTICS_H_
