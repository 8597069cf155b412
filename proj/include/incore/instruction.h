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

#ifndef INCORE_INSTRUCTION_H_
#define INCORE_INSTRUCTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace incore {

enum class Isa { kX86, kAArch64 };

std::string_view IsaName(Isa isa);
std::optional<Isa> ParseIsa(std::string_view name);

enum class RegisterClass { kGp, kFp, kVector, kFlag };

std::string_view RegisterClassName(RegisterClass reg_class);

struct RegisterOp {
  // Canonical architectural register: every alias of one physical register
  // ("eax"/"rax", "d3"/"v3.2d", "w0"/"x0") shares the same name.
  std::string name;
  // Exactly as written, without the x86 '%' sigil.
  std::string spelling;
  RegisterClass reg_class = RegisterClass::kGp;
  int width = 64;
  // Trailing AVX-512 decorations such as "{%k1}{z}".
  std::string decoration;

  bool operator==(const RegisterOp&) const = default;
};

enum class Writeback { kNone, kPre, kPost };

struct MemoryOp {
  std::optional<RegisterOp> base;
  std::optional<RegisterOp> index;
  int scale = 1;
  std::int64_t displacement = 0;
  // Symbolic part of the displacement (".LC0", ":lo12:table").
  std::string symbol;
  // x86 segment override without '%'.
  std::string segment;
  // AArch64 index extension ("sxtw", "uxtw"); empty for lsl or none.
  std::string index_extend;
  Writeback writeback = Writeback::kNone;
  // Post-index increment. Pre-index updates use `displacement`.
  std::int64_t increment = 0;
  std::optional<RegisterOp> increment_register;

  bool operator==(const MemoryOp&) const = default;
};

struct ImmediateOp {
  std::int64_t value = 0;
  // Literal spelling without '#'/'$'; kept for non-integer immediates.
  std::string text;

  bool operator==(const ImmediateOp&) const = default;
};

struct IdentifierOp {
  std::string text;

  bool operator==(const IdentifierOp&) const = default;
};

// AArch64 register list, e.g. "{v0.2d, v1.2d}".
struct RegisterListOp {
  std::vector<RegisterOp> registers;
  // Lane selector after the list ("[1]"), if any.
  std::string suffix;

  bool operator==(const RegisterListOp&) const = default;
};

using Operand =
    std::variant<RegisterOp, MemoryOp, ImmediateOp, IdentifierOp, RegisterListOp>;

struct Directive {
  std::string name;
  std::string args;

  bool operator==(const Directive&) const = default;
};

enum class LineKind { kInstruction, kDirective, kLabel, kBlank };

struct InstructionForm {
  int line_number = 0;
  std::string mnemonic;
  std::vector<Operand> operands;
  std::optional<std::string> label;
  std::optional<Directive> directive;
  std::optional<std::string> comment;
  // Raw source line.
  std::string source;
  // Set when the operand text could not be parsed.
  bool unrecognized = false;
  std::vector<std::string> warnings;

  LineKind kind() const {
    if (!mnemonic.empty()) return LineKind::kInstruction;
    if (directive) return LineKind::kDirective;
    if (label) return LineKind::kLabel;
    return LineKind::kBlank;
  }
  bool is_instruction() const { return !mnemonic.empty(); }
};

// Equality of mnemonic, operands, label, directive and comment, ignoring
// whitespace differences, line numbers and the raw source.
bool StructurallyEqual(const InstructionForm& a, const InstructionForm& b);

struct Kernel {
  std::vector<InstructionForm> forms;
  Isa isa = Isa::kX86;

  std::size_t instruction_count() const;
};

}  // namespace incore

#endif  // INCORE_INSTRUCTION_H_
