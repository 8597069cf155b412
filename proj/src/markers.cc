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

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "incore/cycles.h"
#include "incore/parser.h"
#include "parse_util.h"

namespace incore {
namespace {

constexpr std::array<std::int64_t, 3> kX86MarkerBytes = {100, 103, 144};
constexpr std::array<std::int64_t, 4> kAArch64MarkerBytes = {213, 3, 32, 31};
constexpr std::int64_t kStartTag = 111;
constexpr std::int64_t kEndTag = 222;

// Returns the marker tag (111/222) carried by a marker mov, or 0.
std::int64_t MarkerTag(const InstructionForm& form, Isa isa) {
  if (form.operands.size() != 2) return 0;
  if (isa == Isa::kX86) {
    if (form.mnemonic != "mov" && form.mnemonic != "movl") return 0;
    const auto* imm = std::get_if<ImmediateOp>(&form.operands[0]);
    const auto* reg = std::get_if<RegisterOp>(&form.operands[1]);
    if (!imm || !reg || !imm->text.empty() || internal::Lower(reg->spelling) != "ebx") {
      return 0;
    }
    return imm->value;
  }
  if (form.mnemonic != "mov") return 0;
  const auto* reg = std::get_if<RegisterOp>(&form.operands[0]);
  const auto* imm = std::get_if<ImmediateOp>(&form.operands[1]);
  if (!imm || !reg || !imm->text.empty() || internal::Lower(reg->spelling) != "x1") {
    return 0;
  }
  return imm->value;
}

bool IsMarkerBytes(const InstructionForm& form, Isa isa) {
  if (!form.directive || form.directive->name != ".byte" || form.is_instruction()) {
    return false;
  }
  std::vector<std::int64_t> bytes;
  std::size_t start = 0;
  const std::string& args = form.directive->args;
  while (start <= args.size()) {
    std::size_t comma = args.find(',', start);
    if (comma == std::string::npos) comma = args.size();
    auto value = internal::ParseInteger(std::string_view(args).substr(start, comma - start));
    if (!value) return false;
    bytes.push_back(*value);
    start = comma + 1;
  }
  if (isa == Isa::kX86) {
    return std::equal(bytes.begin(), bytes.end(), kX86MarkerBytes.begin(),
                      kX86MarkerBytes.end());
  }
  return std::equal(bytes.begin(), bytes.end(), kAArch64MarkerBytes.begin(),
                    kAArch64MarkerBytes.end());
}

struct MarkerHit {
  std::size_t mov_index;
  std::size_t bytes_index;
};

std::string LineList(std::span<const InstructionForm> forms,
                     const std::vector<MarkerHit>& hits) {
  std::string out;
  for (const auto& hit : hits) {
    if (!out.empty()) out += ", ";
    out += std::to_string(forms[hit.mov_index].line_number);
  }
  return out;
}

}  // namespace

Kernel FindMarkers(std::span<const InstructionForm> forms, Isa isa) {
  std::vector<MarkerHit> starts;
  std::vector<MarkerHit> ends;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const std::int64_t tag = MarkerTag(forms[i], isa);
    if (tag != kStartTag && tag != kEndTag) continue;
    std::size_t next = i + 1;
    while (next < forms.size() && forms[next].kind() == LineKind::kBlank) ++next;
    if (next >= forms.size() || !IsMarkerBytes(forms[next], isa)) continue;
    (tag == kStartTag ? starts : ends).push_back({i, next});
  }
  if (starts.empty()) throw Error("start marker not found");
  if (ends.empty()) throw Error("end marker not found");
  if (starts.size() > 1) {
    throw Error("multiple start markers found (lines " + LineList(forms, starts) + ")");
  }
  if (ends.size() > 1) {
    throw Error("multiple end markers found (lines " + LineList(forms, ends) + ")");
  }
  if (ends[0].mov_index < starts[0].bytes_index) {
    throw Error("end marker (line " + std::to_string(forms[ends[0].mov_index].line_number) +
                ") precedes start marker (line " +
                std::to_string(forms[starts[0].mov_index].line_number) + ")");
  }
  Kernel kernel;
  kernel.isa = isa;
  kernel.forms.assign(forms.begin() + static_cast<std::ptrdiff_t>(starts[0].bytes_index) + 1,
                      forms.begin() + static_cast<std::ptrdiff_t>(ends[0].mov_index));
  return kernel;
}

}  // namespace incore
