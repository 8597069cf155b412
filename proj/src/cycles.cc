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

#include "incore/cycles.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

namespace incore {
namespace {

std::int64_t ParseInt(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error("invalid cycle value '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Cycles ParseCycles(std::string_view text) {
  const std::string_view whole = text;
  text = Trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = ParseInt(Trim(text.substr(0, slash)), whole);
    const std::int64_t den = ParseInt(Trim(text.substr(slash + 1)), whole);
    if (den == 0) throw Error("zero denominator in '" + std::string(whole) + "'");
    return Cycles(num, den);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw Error("invalid cycle value '" + std::string(whole) + "'");
  }
  if (frac_part.size() > 15) {
    throw Error("too many decimals in '" + std::string(whole) + "'");
  }
  Cycles value(int_part.empty() ? 0 : ParseInt(int_part, whole));
  if (!frac_part.empty()) {
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    value += Cycles(ParseInt(frac_part, whole), scale);
  }
  return negative ? -value : value;
}

std::string FormatCycles(Cycles value) {
  std::int64_t den = value.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    return std::to_string(value.numerator()) + "/" +
           std::to_string(value.denominator());
  }
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return FormatFixed(value, std::max(twos, fives));
}

std::string FormatFixed(Cycles value, int decimals) {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const Cycles scaled = value * scale;
  const bool negative = scaled < Cycles(0);
  const Cycles magnitude = negative ? -scaled : scaled;
  // Half away from zero.
  const std::int64_t rounded =
      boost::rational_cast<std::int64_t>(magnitude + Cycles(1, 2));
  std::string digits = std::to_string(rounded);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, decimals + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - decimals, ".");
  }
  if (negative && rounded != 0) digits.insert(0, "-");
  return digits;
}

std::string FormatLatency(Cycles value) {
  std::string text = FormatFixed(value, 2);
  if (text.back() == '0') text.pop_back();
  return text;
}

}  // namespace incore
