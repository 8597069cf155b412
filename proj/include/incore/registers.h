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

#ifndef INCORE_REGISTERS_H_
#define INCORE_REGISTERS_H_

#include <optional>
#include <string_view>

#include "incore/instruction.h"

namespace incore {

// Resolves a register spelling (without '%') against the static alias table
// of `isa`. Vector arrangements and lane selectors ("v3.2d", "v0.d[1]") are
// accepted for AArch64. Returns nullopt for anything that is not a register.
std::optional<RegisterOp> LookupRegister(std::string_view spelling, Isa isa);

// Registers that never carry a value between instructions (xzr, rip).
bool IsNonDataRegister(const RegisterOp& reg);

}  // namespace incore

#endif  // INCORE_REGISTERS_H_
