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

// AArch64 operands: registers, #imm, [base, offset|index{, extend #n}]{!},
// post-index increments, register lists and shift/condition identifiers.

#include <string>

#include "incore/registers.h"
#include "parse_util.h"

namespace incore::internal {
namespace {

bool IsShiftOrExtend(std::string_view word) {
  static const char* const kWords[] = {"lsl",  "lsr",  "asr",  "ror",  "msl",
                                       "sxtw", "uxtw", "sxtx", "uxtx", "sxtb",
                                       "uxtb", "sxth", "uxth"};
  for (const char* w : kWords) {
    if (word == w) return true;
  }
  return false;
}

std::optional<std::int64_t> ParseImmediateText(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '#') text.remove_prefix(1);
  return ParseInteger(text);
}

bool LooksLikeImmediate(std::string_view text) {
  if (text.empty()) return false;
  if (text.front() == '#') return true;
  const char c = text.front() == '-' && text.size() > 1 ? text[1] : text.front();
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

ImmediateOp ParseImmediate(std::string_view text) {
  ImmediateOp imm;
  std::string_view literal = Trim(text);
  if (!literal.empty() && literal.front() == '#') literal.remove_prefix(1);
  if (auto value = ParseInteger(literal)) {
    imm.value = *value;
  } else {
    imm.text = std::string(literal);
  }
  return imm;
}

// "lsl 3" / "lsl #3" / "sxtw" -> (word, amount).
std::pair<std::string, int> ParseShift(std::string_view text, int max_amount) {
  text = Trim(text);
  const std::size_t space = text.find_first_of(" \t#");
  const std::string word = Lower(text.substr(0, space));
  if (!IsShiftOrExtend(word)) throw OperandParseError("bad shift '" + std::string(text) + "'");
  int amount = 0;
  if (space != std::string_view::npos) {
    auto value = ParseImmediateText(text.substr(space));
    if (!value || *value < 0 || *value > max_amount) {
      throw OperandParseError("bad shift amount '" + std::string(text) + "'");
    }
    amount = static_cast<int>(*value);
  }
  return {word, amount};
}

RegisterOp ParseRegisterOrThrow(std::string_view text) {
  auto reg = LookupRegister(Trim(text), Isa::kAArch64);
  if (!reg) throw OperandParseError("unknown register '" + std::string(text) + "'");
  return *reg;
}

MemoryOp ParseMemory(std::string_view text) {
  MemoryOp mem;
  if (text.back() == '!') {
    mem.writeback = Writeback::kPre;
    text.remove_suffix(1);
    text = Trim(text);
  }
  if (text.front() != '[' || text.back() != ']') {
    throw OperandParseError("malformed memory operand");
  }
  bool balanced = true;
  const auto parts = SplitTopLevel(text.substr(1, text.size() - 2), &balanced);
  if (!balanced || parts.empty() || parts.size() > 3) {
    throw OperandParseError("malformed memory operand");
  }
  mem.base = ParseRegisterOrThrow(parts[0]);
  if (parts.size() >= 2) {
    const std::string& offset = parts[1];
    if (LooksLikeImmediate(offset)) {
      if (auto value = ParseImmediateText(offset)) {
        mem.displacement = *value;
      } else {
        mem.symbol = offset;
      }
    } else if (auto reg = LookupRegister(offset, Isa::kAArch64)) {
      mem.index = *reg;
    } else {
      mem.symbol = offset;
    }
  }
  if (parts.size() == 3) {
    if (!mem.index) throw OperandParseError("shift without index register");
    auto [word, amount] = ParseShift(parts[2], 4);
    if (word != "lsl") mem.index_extend = word;
    mem.scale = 1 << amount;
  }
  if (mem.writeback == Writeback::kPre && mem.index) {
    throw OperandParseError("pre-index writeback with register offset");
  }
  return mem;
}

RegisterListOp ParseList(std::string_view text) {
  RegisterListOp list;
  const std::size_t close = text.find('}');
  if (close == std::string_view::npos) throw OperandParseError("unterminated list");
  list.suffix = std::string(Trim(text.substr(close + 1)));
  bool balanced = true;
  for (const auto& item : SplitTopLevel(text.substr(1, close - 1), &balanced)) {
    const std::size_t dash = item.find('-');
    if (dash == std::string::npos) {
      list.registers.push_back(ParseRegisterOrThrow(item));
      continue;
    }
    // Ranges such as v0.2d-v3.2d expand to every register in between.
    const RegisterOp first = ParseRegisterOrThrow(item.substr(0, dash));
    const RegisterOp last = ParseRegisterOrThrow(item.substr(dash + 1));
    const int lo = std::stoi(first.name.substr(1));
    const int hi = std::stoi(last.name.substr(1));
    const std::string arrangement = first.spelling.substr(first.spelling.find('.'));
    for (int i = lo; i <= hi; ++i) {
      list.registers.push_back(
          ParseRegisterOrThrow(first.spelling.substr(0, 1) + std::to_string(i) + arrangement));
    }
  }
  if (list.registers.empty()) throw OperandParseError("empty register list");
  return list;
}

Operand ParseOperand(std::string_view text) {
  if (text.empty()) throw OperandParseError("empty operand");
  if (text.front() == '[') return ParseMemory(text);
  if (text.front() == '{') return ParseList(text);
  if (LooksLikeImmediate(text)) return ParseImmediate(text);
  if (auto reg = LookupRegister(text, Isa::kAArch64)) return *reg;
  const std::size_t space = text.find_first_of(" \t#");
  if (space != std::string_view::npos && IsShiftOrExtend(Lower(text.substr(0, space)))) {
    auto [word, amount] = ParseShift(text, 63);
    return IdentifierOp{word + " #" + std::to_string(amount)};
  }
  return IdentifierOp{std::string(text)};
}

std::string FormatMemory(const MemoryOp& mem) {
  std::string out = "[" + mem.base->spelling;
  if (mem.index) {
    out += ", " + mem.index->spelling;
    int log2 = 0;
    while ((1 << log2) < mem.scale) ++log2;
    if (!mem.index_extend.empty()) {
      out += ", " + mem.index_extend;
      if (log2 > 0) out += " #" + std::to_string(log2);
    } else if (log2 > 0) {
      out += ", lsl #" + std::to_string(log2);
    }
  } else if (!mem.symbol.empty()) {
    out += ", " + mem.symbol;
  } else if (mem.displacement != 0) {
    out += ", #" + std::to_string(mem.displacement);
  }
  out += "]";
  if (mem.writeback == Writeback::kPre) out += "!";
  if (mem.writeback == Writeback::kPost) {
    out += ", " + (mem.increment_register ? mem.increment_register->spelling
                                          : "#" + std::to_string(mem.increment));
  }
  return out;
}

}  // namespace

std::vector<Operand> ParseAArch64Operands(std::string_view text) {
  std::vector<Operand> operands;
  if (Trim(text).empty()) return operands;
  bool balanced = true;
  const auto parts = SplitTopLevel(text, &balanced);
  if (!balanced) throw OperandParseError("unbalanced brackets");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Operand operand = ParseOperand(parts[i]);
    auto* mem = std::get_if<MemoryOp>(&operand);
    if (mem && mem->writeback == Writeback::kNone && i + 1 < parts.size()) {
      // Post-index increment: "[x14], 8" or "[x0], x1".
      const std::string& next = parts[i + 1];
      if (LooksLikeImmediate(next)) {
        auto value = ParseImmediateText(next);
        if (!value) throw OperandParseError("bad post-index increment '" + next + "'");
        mem->writeback = Writeback::kPost;
        mem->increment = *value;
        ++i;
      } else if (auto reg = LookupRegister(next, Isa::kAArch64)) {
        mem->writeback = Writeback::kPost;
        mem->increment_register = *reg;
        ++i;
      }
    }
    operands.push_back(std::move(operand));
  }
  return operands;
}

std::string FormatAArch64Operand(const Operand& operand) {
  if (const auto* reg = std::get_if<RegisterOp>(&operand)) return reg->spelling;
  if (const auto* imm = std::get_if<ImmediateOp>(&operand)) {
    return "#" + (imm->text.empty() ? std::to_string(imm->value) : imm->text);
  }
  if (const auto* id = std::get_if<IdentifierOp>(&operand)) return id->text;
  if (const auto* list = std::get_if<RegisterListOp>(&operand)) {
    std::string out = "{";
    for (std::size_t i = 0; i < list->registers.size(); ++i) {
      out += (i ? ", " : "") + list->registers[i].spelling;
    }
    return out + "}" + list->suffix;
  }
  return FormatMemory(std::get<MemoryOp>(operand));
}

}  // namespace incore::internal
