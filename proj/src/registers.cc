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

#include "incore/registers.h"

#include <cctype>
#include <charconv>
#include <string>
#include <unordered_map>

namespace incore {
namespace {

struct RegisterInfo {
  std::string canonical;
  RegisterClass reg_class;
  int width;
};

using RegisterTable = std::unordered_map<std::string, RegisterInfo>;

RegisterTable BuildX86Table() {
  RegisterTable table;
  auto gp = [&](const std::string& name, RegisterClass cls, int width,
                const std::string& canonical) {
    table[name] = {canonical, cls, width};
  };
  struct Legacy {
    const char* r64;
    const char* r32;
    const char* r16;
    const char* r8;
    const char* r8h;
  };
  const Legacy legacy[] = {
      {"rax", "eax", "ax", "al", "ah"}, {"rbx", "ebx", "bx", "bl", "bh"},
      {"rcx", "ecx", "cx", "cl", "ch"}, {"rdx", "edx", "dx", "dl", "dh"},
      {"rsi", "esi", "si", "sil", nullptr}, {"rdi", "edi", "di", "dil", nullptr},
      {"rbp", "ebp", "bp", "bpl", nullptr}, {"rsp", "esp", "sp", "spl", nullptr},
  };
  for (const auto& r : legacy) {
    gp(r.r64, RegisterClass::kGp, 64, r.r64);
    gp(r.r32, RegisterClass::kGp, 32, r.r64);
    gp(r.r16, RegisterClass::kGp, 16, r.r64);
    gp(r.r8, RegisterClass::kGp, 8, r.r64);
    if (r.r8h) gp(r.r8h, RegisterClass::kGp, 8, r.r64);
  }
  for (int i = 8; i < 16; ++i) {
    const std::string base = "r" + std::to_string(i);
    gp(base, RegisterClass::kGp, 64, base);
    gp(base + "d", RegisterClass::kGp, 32, base);
    gp(base + "w", RegisterClass::kGp, 16, base);
    gp(base + "b", RegisterClass::kGp, 8, base);
    gp(base + "l", RegisterClass::kGp, 8, base);
  }
  gp("rip", RegisterClass::kGp, 64, "rip");
  gp("eip", RegisterClass::kGp, 32, "rip");
  for (int i = 0; i < 32; ++i) {
    const std::string n = std::to_string(i);
    gp("xmm" + n, RegisterClass::kVector, 128, "zmm" + n);
    gp("ymm" + n, RegisterClass::kVector, 256, "zmm" + n);
    gp("zmm" + n, RegisterClass::kVector, 512, "zmm" + n);
  }
  for (int i = 0; i < 8; ++i) {
    const std::string n = std::to_string(i);
    gp("k" + n, RegisterClass::kGp, 64, "k" + n);
    gp("mm" + n, RegisterClass::kVector, 64, "mm" + n);
    gp("st(" + n + ")", RegisterClass::kFp, 80, "st" + n);
  }
  gp("st", RegisterClass::kFp, 80, "st0");
  for (const char* seg : {"cs", "ds", "es", "fs", "gs", "ss"}) {
    gp(seg, RegisterClass::kGp, 16, seg);
  }
  return table;
}

RegisterTable BuildAArch64Table() {
  RegisterTable table;
  for (int i = 0; i <= 30; ++i) {
    const std::string n = std::to_string(i);
    table["x" + n] = {"x" + n, RegisterClass::kGp, 64};
    table["w" + n] = {"x" + n, RegisterClass::kGp, 32};
  }
  table["fp"] = {"x29", RegisterClass::kGp, 64};
  table["lr"] = {"x30", RegisterClass::kGp, 64};
  table["sp"] = {"sp", RegisterClass::kGp, 64};
  table["wsp"] = {"sp", RegisterClass::kGp, 32};
  table["xzr"] = {"xzr", RegisterClass::kGp, 64};
  table["wzr"] = {"xzr", RegisterClass::kGp, 32};
  table["nzcv"] = {"nzcv", RegisterClass::kFlag, 32};
  for (int i = 0; i < 32; ++i) {
    const std::string n = std::to_string(i);
    table["b" + n] = {"v" + n, RegisterClass::kFp, 8};
    table["h" + n] = {"v" + n, RegisterClass::kFp, 16};
    table["s" + n] = {"v" + n, RegisterClass::kFp, 32};
    table["d" + n] = {"v" + n, RegisterClass::kFp, 64};
    table["q" + n] = {"v" + n, RegisterClass::kVector, 128};
    table["v" + n] = {"v" + n, RegisterClass::kVector, 128};
    table["z" + n] = {"v" + n, RegisterClass::kVector, 128};
  }
  for (int i = 0; i < 16; ++i) {
    table["p" + std::to_string(i)] = {"p" + std::to_string(i),
                                      RegisterClass::kFlag, 16};
  }
  return table;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Element width of an AArch64 arrangement or lane suffix ("2d" -> 64).
int ElementWidth(char element) {
  switch (element) {
    case 'b': return 8;
    case 'h': return 16;
    case 's': return 32;
    case 'd': return 64;
    case 'q': return 128;
    default: return 0;
  }
}

std::optional<RegisterOp> LookupAArch64Vector(const std::string& spelling,
                                              const RegisterTable& table) {
  // vN.<arrangement> or vN.<element>[lane]; zN.<element> for SVE.
  const auto dot = spelling.find('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string head = spelling.substr(0, dot);
  auto it = table.find(head);
  if (it == table.end() || (head[0] != 'v' && head[0] != 'z')) return std::nullopt;
  std::string tail = spelling.substr(dot + 1);
  bool lane = false;
  if (auto bracket = tail.find('['); bracket != std::string::npos) {
    if (tail.back() != ']') return std::nullopt;
    lane = true;
    tail = tail.substr(0, bracket);
  }
  std::size_t pos = 0;
  int count = 0;
  while (pos < tail.size() && std::isdigit(static_cast<unsigned char>(tail[pos]))) {
    count = count * 10 + (tail[pos] - '0');
    ++pos;
  }
  if (pos + 1 != tail.size()) return std::nullopt;
  const int element = ElementWidth(tail[pos]);
  if (element == 0) return std::nullopt;
  RegisterOp reg;
  reg.name = it->second.canonical;
  reg.spelling = spelling;
  if (lane || count == 0) {
    reg.reg_class = lane ? RegisterClass::kFp : RegisterClass::kVector;
    reg.width = lane ? element : 128;
  } else {
    reg.reg_class = RegisterClass::kVector;
    reg.width = element * count;
  }
  return reg;
}

}  // namespace

std::optional<RegisterOp> LookupRegister(std::string_view spelling, Isa isa) {
  static const RegisterTable x86 = BuildX86Table();
  static const RegisterTable aarch64 = BuildAArch64Table();
  const RegisterTable& table = isa == Isa::kX86 ? x86 : aarch64;
  const std::string key = Lower(spelling);
  if (auto it = table.find(key); it != table.end()) {
    RegisterOp reg;
    reg.name = it->second.canonical;
    reg.spelling = std::string(spelling);
    reg.reg_class = it->second.reg_class;
    reg.width = it->second.width;
    return reg;
  }
  if (isa == Isa::kAArch64) {
    if (auto reg = LookupAArch64Vector(key, table)) {
      reg->spelling = std::string(spelling);
      return reg;
    }
  }
  return std::nullopt;
}

bool IsNonDataRegister(const RegisterOp& reg) {
  return reg.name == "xzr" || reg.name == "rip";
}

}  // namespace incore
