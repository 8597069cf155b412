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

// Helpers shared by the ISA-specific operand parsers.

#ifndef INCORE_SRC_PARSE_UTIL_H_
#define INCORE_SRC_PARSE_UTIL_H_

#include <cctype>
#include <charconv>
#include <exception>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incore/instruction.h"

namespace incore::internal {

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline std::string CollapseSpaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : Trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

// Integer literal in decimal, hex (0x) or binary (0b), optionally signed.
inline std::optional<std::int64_t> ParseInteger(std::string_view s) {
  s = Trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  } else if (s.size() > 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
    base = 2;
    s.remove_prefix(2);
  }
  if (s.empty()) return std::nullopt;
  std::uint64_t magnitude = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), magnitude, base);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  const auto value = static_cast<std::int64_t>(magnitude);
  return negative ? -value : value;
}

// Splits on commas that are not nested inside (), [] or {}.
inline std::vector<std::string> SplitTopLevel(std::string_view s, bool* balanced) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  *balanced = true;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') {
      --depth;
      if (depth < 0) *balanced = false;
    }
    if (c == ',' && depth == 0) {
      parts.emplace_back(Trim(current));
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (depth != 0) *balanced = false;
  if (!Trim(current).empty() || !parts.empty()) parts.emplace_back(Trim(current));
  return parts;
}

class OperandParseError : public std::exception {
 public:
  explicit OperandParseError(std::string message) : message_(std::move(message)) {}
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::string message_;
};

std::vector<Operand> ParseX86Operands(std::string_view text);
std::vector<Operand> ParseAArch64Operands(std::string_view text);
std::string FormatX86Operand(const Operand& operand);
std::string FormatAArch64Operand(const Operand& operand);

}  // namespace incore::internal

#endif  // INCORE_SRC_PARSE_UTIL_H_
