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

#ifndef INCORE_PARSER_H_
#define INCORE_PARSER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "incore/instruction.h"

namespace incore {

// Parses every line of `text` into one InstructionForm, blank lines
// included, with 1-based line numbers. Lines whose operands cannot be parsed
// are returned with `unrecognized` set and a warning attached.
std::vector<InstructionForm> ParseFile(std::string_view text, Isa isa);

InstructionForm ParseLine(std::string_view line, int line_number, Isa isa);

// Picks the ISA whose register lexicon matches more instruction lines.
// Throws Error when neither matches or both match equally often.
Isa DetectIsa(std::string_view text);

// Returns the forms strictly between the start and end marker sequences:
//   x86:     movl $111, %ebx ; .byte 100,103,144   ...   movl $222, %ebx ; .byte 100,103,144
//   AArch64: mov x1, #111    ; .byte 213,3,32,31   ...   mov x1, #222    ; .byte 213,3,32,31
// Exactly one of each is required.
Kernel FindMarkers(std::span<const InstructionForm> forms, Isa isa);

// Returns the forms whose line numbers lie in [first, last].
Kernel SelectLines(std::span<const InstructionForm> forms, Isa isa, int first,
                   int last);

std::string FormatOperand(const Operand& operand, Isa isa);

// Renders a form back to assembly text that re-parses to a structurally
// equal form.
std::string FormatForm(const InstructionForm& form, Isa isa);

std::string ReadTextFile(const std::string& path);

}  // namespace incore

#endif  // INCORE_PARSER_H_
