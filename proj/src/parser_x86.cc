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

// AT&T syntax operands: %reg, $imm, seg:disp(base,index,scale), symbols.

#include <string>

#include "incore/registers.h"
#include "parse_util.h"

namespace incore::internal {
namespace {

RegisterOp ParseRegister(std::string_view text) {
  // text starts after '%'.
  std::string_view decoration;
  if (auto brace = text.find('{'); brace != std::string_view::npos) {
    decoration = text.substr(brace);
    text = text.substr(0, brace);
  }
  auto reg = LookupRegister(Trim(text), Isa::kX86);
  if (!reg) throw OperandParseError("unknown register '%" + std::string(text) + "'");
  reg->decoration = std::string(decoration);
  return *reg;
}

// Splits "sym+8" / "-8" / ".LC0" into symbol and numeric displacement.
void ParseDisplacement(std::string_view text, MemoryOp& mem) {
  text = Trim(text);
  if (text.empty()) return;
  if (auto value = ParseInteger(text)) {
    mem.displacement = *value;
    return;
  }
  // Trailing "+N" / "-N" after a symbol.
  const std::size_t sign = text.find_last_of("+-");
  if (sign != std::string_view::npos && sign > 0) {
    if (auto value = ParseInteger(text.substr(sign))) {
      mem.symbol = std::string(Trim(text.substr(0, sign)));
      mem.displacement = *value;
      return;
    }
  }
  mem.symbol = std::string(text);
}

MemoryOp ParseMemory(std::string_view text) {
  MemoryOp mem;
  // Segment override.
  if (text.size() > 4 && text.front() == '%' && text[3] == ':') {
    mem.segment = std::string(text.substr(1, 2));
    text = Trim(text.substr(4));
  }
  const std::size_t open = text.find('(');
  if (open == std::string_view::npos) {
    ParseDisplacement(text, mem);
    return mem;
  }
  if (text.back() != ')') throw OperandParseError("malformed memory operand");
  ParseDisplacement(text.substr(0, open), mem);
  const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = inner.find(',', start);
    parts.emplace_back(Trim(inner.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() > 3) throw OperandParseError("too many address components");
  if (!parts[0].empty()) {
    if (parts[0].front() != '%') throw OperandParseError("malformed base register");
    mem.base = ParseRegister(std::string_view(parts[0]).substr(1));
  }
  if (parts.size() >= 2 && !parts[1].empty()) {
    if (parts[1].front() != '%') throw OperandParseError("malformed index register");
    mem.index = ParseRegister(std::string_view(parts[1]).substr(1));
  }
  if (parts.size() == 3 && !parts[2].empty()) {
    auto scale = ParseInteger(parts[2]);
    if (!scale || (*scale != 1 && *scale != 2 && *scale != 4 && *scale != 8)) {
      throw OperandParseError("scale must be 1, 2, 4 or 8");
    }
    mem.scale = static_cast<int>(*scale);
  }
  if (!mem.base && !mem.index) throw OperandParseError("empty address");
  return mem;
}

Operand ParseOperand(std::string_view text) {
  if (text.empty()) throw OperandParseError("empty operand");
  if (text.front() == '*') return IdentifierOp{std::string(text)};
  if (text.front() == '$') {
    ImmediateOp imm;
    const std::string_view literal = Trim(text.substr(1));
    if (auto value = ParseInteger(literal)) {
      imm.value = *value;
    } else {
      imm.text = std::string(literal);
    }
    return imm;
  }
  const bool segment = text.size() > 4 && text.front() == '%' && text[3] == ':';
  if (text.front() == '%' && !segment) return ParseRegister(text.substr(1));
  if (segment || text.find('(') != std::string_view::npos) return ParseMemory(text);
  return IdentifierOp{std::string(text)};
}

std::string SignedNumber(std::int64_t value) {
  return (value >= 0 ? "+" : "") + std::to_string(value);
}

std::string FormatRegister(const RegisterOp& reg) {
  return "%" + reg.spelling + reg.decoration;
}

}  // namespace

std::vector<Operand> ParseX86Operands(std::string_view text) {
  bool balanced = true;
  std::vector<Operand> operands;
  if (Trim(text).empty()) return operands;
  for (const auto& part : SplitTopLevel(text, &balanced)) {
    if (!balanced) throw OperandParseError("unbalanced parentheses");
    operands.push_back(ParseOperand(part));
  }
  return operands;
}

std::string FormatX86Operand(const Operand& operand) {
  if (const auto* reg = std::get_if<RegisterOp>(&operand)) return FormatRegister(*reg);
  if (const auto* imm = std::get_if<ImmediateOp>(&operand)) {
    return "$" + (imm->text.empty() ? std::to_string(imm->value) : imm->text);
  }
  if (const auto* id = std::get_if<IdentifierOp>(&operand)) return id->text;
  if (const auto* list = std::get_if<RegisterListOp>(&operand)) {
    std::string out = "{";
    for (std::size_t i = 0; i < list->registers.size(); ++i) {
      out += (i ? ", " : "") + FormatRegister(list->registers[i]);
    }
    return out + "}" + list->suffix;
  }
  const auto& mem = std::get<MemoryOp>(operand);
  std::string out;
  if (!mem.segment.empty()) out += "%" + mem.segment + ":";
  if (!mem.symbol.empty()) {
    out += mem.symbol;
    if (mem.displacement != 0) out += SignedNumber(mem.displacement);
  } else if (mem.displacement != 0 || (!mem.base && !mem.index)) {
    out += std::to_string(mem.displacement);
  }
  if (mem.base || mem.index) {
    out += "(";
    if (mem.base) out += FormatRegister(*mem.base);
    if (mem.index) out += "," + FormatRegister(*mem.index) + "," + std::to_string(mem.scale);
    out += ")";
  }
  return out;
}

}  // namespace incore::internal
