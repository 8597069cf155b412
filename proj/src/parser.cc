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

#include "incore/parser.h"

#include <fstream>
#include <regex>
#include <sstream>

#include "incore/cycles.h"
#include "incore/registers.h"
#include "parse_util.h"

namespace incore {

using internal::CollapseSpaces;
using internal::Lower;
using internal::Trim;

std::string_view IsaName(Isa isa) {
  return isa == Isa::kX86 ? "x86" : "aarch64";
}

std::optional<Isa> ParseIsa(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "x86" || lower == "x86_64" || lower == "x86-64") return Isa::kX86;
  if (lower == "aarch64" || lower == "arm64" || lower == "arm") {
    return Isa::kAArch64;
  }
  return std::nullopt;
}

std::string_view RegisterClassName(RegisterClass reg_class) {
  switch (reg_class) {
    case RegisterClass::kGp: return "gp";
    case RegisterClass::kFp: return "fp";
    case RegisterClass::kVector: return "vec";
    case RegisterClass::kFlag: return "flag";
  }
  return "gp";
}

bool StructurallyEqual(const InstructionForm& a, const InstructionForm& b) {
  auto norm_comment = [](const std::optional<std::string>& c) {
    return c ? std::optional<std::string>(CollapseSpaces(*c)) : std::nullopt;
  };
  auto norm_directive = [](const std::optional<Directive>& d) {
    if (!d) return std::optional<Directive>();
    return std::optional<Directive>(Directive{d->name, CollapseSpaces(d->args)});
  };
  return a.mnemonic == b.mnemonic && a.operands == b.operands &&
         a.label == b.label &&
         norm_directive(a.directive) == norm_directive(b.directive) &&
         norm_comment(a.comment) == norm_comment(b.comment);
}

std::size_t Kernel::instruction_count() const {
  std::size_t n = 0;
  for (const auto& form : forms) n += form.is_instruction() ? 1 : 0;
  return n;
}

namespace {

// Splits off a trailing comment. Quoted strings are skipped.
std::pair<std::string_view, std::optional<std::string>> SplitComment(
    std::string_view line, Isa isa) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (quoted) continue;
    const bool x86_comment = isa == Isa::kX86 && c == '#';
    const bool slash_comment = c == '/' && i + 1 < line.size() && line[i + 1] == '/';
    if (x86_comment || slash_comment) {
      const std::size_t skip = x86_comment ? 1 : 2;
      return {line.substr(0, i), std::string(Trim(line.substr(i + skip)))};
    }
  }
  return {line, std::nullopt};
}

bool IsLabelChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '$' || c == '@';
}

std::optional<std::string> TakeLabel(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && IsLabelChar(rest[i])) ++i;
  if (i == 0 || i >= rest.size() || rest[i] != ':') return std::nullopt;
  // "::" or ":lo12:" style relocation specifiers are not labels.
  if (i + 1 < rest.size() && rest[i + 1] == ':') return std::nullopt;
  std::string label(rest.substr(0, i));
  rest = Trim(rest.substr(i + 1));
  return label;
}

bool IsX86Prefix(std::string_view word) {
  static const char* const kPrefixes[] = {"rep",  "repe",    "repz",   "repne",
                                          "repnz", "lock",   "notrack", "data16",
                                          "addr32", "rex64", "bnd"};
  for (const char* prefix : kPrefixes) {
    if (word == prefix) return true;
  }
  return false;
}

}  // namespace

InstructionForm ParseLine(std::string_view line, int line_number, Isa isa) {
  InstructionForm form;
  form.line_number = line_number;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  form.source = std::string(line);
  auto [code, comment] = SplitComment(line, isa);
  form.comment = comment;
  std::string_view rest = Trim(code);
  if (rest.empty()) return form;

  form.label = TakeLabel(rest);
  if (rest.empty()) return form;

  std::size_t word_end = 0;
  while (word_end < rest.size() &&
         !std::isspace(static_cast<unsigned char>(rest[word_end]))) {
    ++word_end;
  }
  std::string word(rest.substr(0, word_end));
  std::string_view tail = Trim(rest.substr(word_end));

  if (word.front() == '.') {
    form.directive = Directive{word, CollapseSpaces(tail)};
    return form;
  }

  form.mnemonic = Lower(word);
  if (isa == Isa::kX86 && IsX86Prefix(form.mnemonic) && !tail.empty() &&
      tail.front() != '%' && tail.front() != '$') {
    std::size_t next_end = 0;
    while (next_end < tail.size() &&
           !std::isspace(static_cast<unsigned char>(tail[next_end]))) {
      ++next_end;
    }
    form.mnemonic += " " + Lower(tail.substr(0, next_end));
    tail = Trim(tail.substr(next_end));
  }

  try {
    form.operands = isa == Isa::kX86 ? internal::ParseX86Operands(tail)
                                     : internal::ParseAArch64Operands(tail);
  } catch (const internal::OperandParseError& e) {
    form.operands.clear();
    form.unrecognized = true;
    form.warnings.push_back("line " + std::to_string(line_number) +
                            ": cannot parse operands '" + std::string(tail) +
                            "': " + e.what());
  }
  return form;
}

std::vector<InstructionForm> ParseFile(std::string_view text, Isa isa) {
  std::vector<InstructionForm> forms;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    // A final newline does not open another line.
    if (start == text.size() && end == text.size() && line_number > 0) break;
    ++line_number;
    forms.push_back(ParseLine(text.substr(start, end - start), line_number, isa));
    start = end + 1;
  }
  return forms;
}

Isa DetectIsa(std::string_view text) {
  static const std::regex kWord(R"([A-Za-z][A-Za-z0-9_.\[\]]*)");
  int x86_lines = 0;
  int aarch64_lines = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    // Lines starting with '#' are x86 comments or preprocessor leftovers.
    if (auto pos = line.find("//"); pos != std::string::npos) line.resize(pos);
    std::string_view rest = Trim(line);
    if (rest.empty()) continue;
    if (TakeLabel(rest); rest.empty() || rest.front() == '.' || rest.front() == '#') {
      continue;
    }
    const std::string code(rest);
    bool x86 = false;
    for (std::size_t pos = code.find('%'); pos != std::string::npos;
         pos = code.find('%', pos + 1)) {
      std::size_t len = 0;
      while (pos + 1 + len < code.size() &&
             std::isalnum(static_cast<unsigned char>(code[pos + 1 + len]))) {
        ++len;
      }
      if (len > 0 && LookupRegister(code.substr(pos + 1, len), Isa::kX86)) {
        x86 = true;
        break;
      }
    }
    bool aarch64 = false;
    if (!x86) {
      const std::size_t space = code.find_first_of(" \t");
      if (space != std::string::npos) {
        const std::string operands = code.substr(space);
        for (std::sregex_iterator it(operands.begin(), operands.end(), kWord), e;
             it != e; ++it) {
          std::string token = it->str();
          if (auto bracket = token.find('['); bracket == 0) token.erase(0, 1);
          if (LookupRegister(token, Isa::kAArch64)) {
            aarch64 = true;
            break;
          }
        }
      }
    }
    x86_lines += x86 ? 1 : 0;
    aarch64_lines += aarch64 ? 1 : 0;
  }
  if (x86_lines == aarch64_lines) {
    throw Error("cannot detect the instruction set (" + std::to_string(x86_lines) +
                " x86 vs " + std::to_string(aarch64_lines) +
                " AArch64 lines); pass --isa x86 or --isa aarch64");
  }
  return x86_lines > aarch64_lines ? Isa::kX86 : Isa::kAArch64;
}

Kernel SelectLines(std::span<const InstructionForm> forms, Isa isa, int first,
                   int last) {
  if (first < 1 || last < first) {
    throw Error("invalid line range " + std::to_string(first) + ":" +
                std::to_string(last));
  }
  if (forms.empty() || first > forms.back().line_number) {
    throw Error("line range " + std::to_string(first) + ":" + std::to_string(last) +
                " is outside the file");
  }
  Kernel kernel;
  kernel.isa = isa;
  for (const auto& form : forms) {
    if (form.line_number >= first && form.line_number <= last) {
      kernel.forms.push_back(form);
    }
  }
  return kernel;
}

std::string FormatOperand(const Operand& operand, Isa isa) {
  return isa == Isa::kX86 ? internal::FormatX86Operand(operand)
                          : internal::FormatAArch64Operand(operand);
}

std::string FormatForm(const InstructionForm& form, Isa isa) {
  std::string out;
  if (form.label) out += *form.label + ":";
  if (form.is_instruction()) {
    out += "\t" + form.mnemonic;
    for (std::size_t i = 0; i < form.operands.size(); ++i) {
      out += i == 0 ? "\t" : ", ";
      out += FormatOperand(form.operands[i], isa);
    }
  } else if (form.directive) {
    out += "\t" + form.directive->name;
    if (!form.directive->args.empty()) out += "\t" + form.directive->args;
  }
  if (form.comment) {
    if (!out.empty()) out += "\t";
    out += isa == Isa::kX86 ? "# " : "// ";
    out += *form.comment;
  }
  return out;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("error while reading '" + path + "'");
  return buffer.str();
}

}  // namespace incore
