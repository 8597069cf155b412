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

#include "incore/semantics.h"

#include <algorithm>
#include <regex>
#include <set>
#include <string>
#include <utility>

#include "incore/registers.h"

namespace incore {
namespace {

void AddUnique(std::vector<std::string>& list, const std::string& reg) {
  if (std::find(list.begin(), list.end(), reg) == list.end()) list.push_back(reg);
}

class FlowBuilder {
 public:
  void Read(const RegisterOp& reg) {
    if (IsNonDataRegister(reg)) return;
    AddUnique(flow_.data_sources, reg.name);
    AddUnique(flow_.sources, reg.name);
  }
  void ReadImplicit(const std::string& name) {
    AddUnique(flow_.data_sources, name);
    AddUnique(flow_.sources, name);
  }
  void Write(const RegisterOp& reg) {
    if (IsNonDataRegister(reg)) return;
    AddUnique(flow_.destinations, reg.name);
  }
  void WriteImplicit(const std::string& name) { AddUnique(flow_.destinations, name); }

  void ReadAddress(const MemoryOp& mem) {
    for (const auto* reg : {&mem.base, &mem.index, &mem.increment_register}) {
      if (!*reg || IsNonDataRegister(**reg)) continue;
      AddUnique(flow_.address_sources, (*reg)->name);
      AddUnique(flow_.sources, (*reg)->name);
    }
    if (mem.writeback != Writeback::kNone && mem.base && !IsNonDataRegister(*mem.base)) {
      AddUnique(flow_.destinations, mem.base->name);
      AddUnique(flow_.writeback_destinations, mem.base->name);
    }
  }
  void Load(const MemoryOp& mem) {
    ReadAddress(mem);
    flow_.mem_loads.push_back(mem);
  }
  void Store(const MemoryOp& mem) {
    ReadAddress(mem);
    flow_.mem_stores.push_back(mem);
  }

  // Registers are read; memory operands are loaded.
  void ReadOperand(const Operand& op) {
    if (const auto* reg = std::get_if<RegisterOp>(&op)) Read(*reg);
    if (const auto* list = std::get_if<RegisterListOp>(&op)) {
      for (const auto& reg : list->registers) Read(reg);
    }
    if (const auto* mem = std::get_if<MemoryOp>(&op)) Load(*mem);
  }
  // Registers are written; memory operands are stored to.
  void WriteOperand(const Operand& op) {
    if (const auto* reg = std::get_if<RegisterOp>(&op)) Write(*reg);
    if (const auto* list = std::get_if<RegisterListOp>(&op)) {
      for (const auto& reg : list->registers) Write(reg);
    }
    if (const auto* mem = std::get_if<MemoryOp>(&op)) Store(*mem);
  }

  DataFlow& flow() { return flow_; }
  DataFlow Take() { return std::move(flow_); }

 private:
  DataFlow flow_;
};

bool Matches(const std::regex& re, const std::string& text) {
  return std::regex_match(text, re);
}

bool AllSameRegister(const std::vector<Operand>& operands) {
  if (operands.size() < 2) return false;
  const auto* first = std::get_if<RegisterOp>(&operands[0]);
  if (!first) return false;
  return std::all_of(operands.begin(), operands.end(), [&](const Operand& op) {
    const auto* reg = std::get_if<RegisterOp>(&op);
    return reg && reg->name == first->name && reg->width == first->width;
  });
}

void Unrecognized(FlowBuilder& builder, const InstructionForm& form, Isa isa) {
  builder.flow().recognized = false;
  builder.flow().category = FormCategory::kCompute;
  builder.flow().warnings.push_back(
      "line " + std::to_string(form.line_number) + ": unknown mnemonic '" +
      form.mnemonic + "', assuming all registers are read and the " +
      (isa == Isa::kX86 ? "last" : "first") + " operand is written");
  for (const auto& op : form.operands) builder.ReadOperand(op);
  if (form.operands.empty()) return;
  const Operand& dest = isa == Isa::kX86 ? form.operands.back() : form.operands.front();
  if (!std::holds_alternative<MemoryOp>(dest)) builder.WriteOperand(dest);
}

// ---------------------------------------------------------------- x86

const std::regex kX86Branch(R"(j[a-z]+|call[q]?|ret[q]?|loop[a-z]*)");
const std::regex kX86Compare(R"((cmp|test|bt)[bwlq]?|v?u?comis[sd]|v?ptest|kortest[bwdq])");
const std::regex kX86Other(
    R"(nop[wlq]?|endbr(32|64)|pause|[lsm]fence|prefetch[a-z0-9]*|ud2|hlt|int3|cpuid|rdtscp?|vzeroupper|vzeroall)");
const std::regex kX86Move(
    R"(v?(mov[bwlq]?|movabs[bwlq]?|movnti[lq]?|movs[bwl][wlq]|movz[bwl][wlq]|movsx[a-z]*|movzx|movslq|movq|movd|movap[sd]|movup[sd]|movdq[au]|movdqa(32|64)|movdqu(8|16|32|64)|movs[sd]|movnt[a-z]*|movh[lp][sd]?|movl[hp][sd]?|movddup|movs[hl]dup|lddqu|p?broadcast[a-z0-9]*)|kmov[bwdq])");
const std::regex kX86Lea(R"(lea[wlq]?)");
const std::regex kX86Push(R"(push[wlq]?)");
const std::regex kX86Pop(R"(pop[wlq]?)");
const std::regex kX86Integer(
    R"((add|sub|adc|sbb|and|or|xor|inc|dec|neg|not|imul|mul|div|idiv|shl|shr|sal|sar|rol|ror|rcl|rcr|shld|shrd|bswap|popcnt|lzcnt|tzcnt|andn|bsf|bsr|xchg|xadd|cmpxchg|bextr|blsr|blsi|bzhi|pdep|pext|sarx|shlx|shrx|rorx|mulx|adcx|adox)[bwlq]?|set[a-z]+|cmov[a-z]+)");
const std::regex kX86SignExtend(R"(cltq|cqto|cwtl|cltd|cqo|cdq|cdqe|cbw|cwde)");
const std::regex kX86Float(
    R"(v?(add|sub|mul|div|min|max|sqrt|and|andn|or|xor|rcp|rsqrt|round|hadd|hsub|addsub|unpckl|unpckh|shuf|blend|blendv|cmp[a-z]*|dp|movmsk|rcp14|rsqrt14)(ps|pd|ss|sd))");
const std::regex kX86Fma(R"(vf(n?m(add|sub)(sub|add)?)(132|213|231)(ps|pd|ss|sd))");
const std::regex kX86Convert(R"(v?cvt[a-z0-9]+)");
const std::regex kX86IntegerSimd(
    R"(v?p(add|sub|mul|and|andn|or|xor|max|min|cmp|sll|srl|sra|shuf|unpck|alignr|blend|perm|madd|avg|abs|sign|minpos|sad|ack|ext|ins|movmsk|test|movsx|movzx|lzcnt|popcnt|ternlog|rol|ror|conflict|compress|expand|gather|scatter|dpbusd|dpwssd|hadd|hsub)[a-z0-9]*)");
const std::regex kX86Avx(
    R"(v(insert|extract|perm|gather|scatter|mask|fixupimm|getexp|getmant|scalef|reduce|range|rndscale|compress|expand|align|shuf|unpck|test)[a-z0-9]*)");

// Non-VEX three-operand forms and two-operand forms that do not read their
// destination.
const std::set<std::string> kX86WriteOnly = {
    "imul", "imulq", "imull", "imulw", "andn", "andnq", "andnl", "bextr",
    "bzhi", "pdep", "pext", "shlx", "sarx", "shrx", "rorx", "pshufd",
    "pshufhw", "pshuflw", "popcnt", "popcntq", "popcntl", "lzcnt", "lzcntq",
    "lzcntl", "tzcnt", "tzcntq", "tzcntl", "bsf", "bsfq", "bsfl", "bsr",
    "bsrq", "bsrl", "pmovmskb", "movmskpd", "movmskps"};

const std::set<std::string> kX86ZeroIdioms = {
    "xor", "xorl", "xorq", "xorw", "xorb", "pxor", "xorps", "xorpd",
    "vxorps", "vxorpd", "vpxor", "vpxord", "vpxorq"};

bool IsWriteOnlyX86(const std::string& m, std::size_t operand_count) {
  if (m.rfind("cvt", 0) == 0 || m.rfind("sqrt", 0) == 0 || m.rfind("rcp", 0) == 0 ||
      m.rfind("rsqrt", 0) == 0 || m.rfind("pmovzx", 0) == 0 ||
      m.rfind("pmovsx", 0) == 0 || m.rfind("set", 0) == 0) {
    return true;
  }
  if (m[0] == 'v' && operand_count >= 3) {
    // VEX/EVEX three-operand forms write a separate destination, except
    // accumulating ones.
    return !Matches(kX86Fma, m) && m.rfind("vpternlog", 0) != 0 &&
           m.rfind("vpdp", 0) != 0;
  }
  return kX86WriteOnly.count(m) > 0 && (operand_count == 3 || m.rfind("imul", 0) != 0);
}

DataFlow X86DataFlow(const InstructionForm& form) {
  FlowBuilder b;
  const std::string& m = form.mnemonic;
  const auto& ops = form.operands;
  DataFlow& flow = b.flow();

  if (Matches(kX86Branch, m)) {
    flow.category = FormCategory::kBranch;
    for (const auto& op : ops) {
      if (const auto* reg = std::get_if<RegisterOp>(&op)) b.Read(*reg);
    }
    return b.Take();
  }
  if (Matches(kX86Compare, m)) {
    flow.category = FormCategory::kCompare;
    for (const auto& op : ops) b.ReadOperand(op);
    return b.Take();
  }
  if (Matches(kX86Other, m) || m.find(' ') != std::string::npos) {
    flow.category = FormCategory::kOther;
    for (const auto& op : ops) {
      if (const auto* mem = std::get_if<MemoryOp>(&op)) b.ReadAddress(*mem);
    }
    return b.Take();
  }
  if (m == "load") {
    flow.category = FormCategory::kLoad;
    for (const auto& op : ops) b.ReadOperand(op);
    return b.Take();
  }
  if (Matches(kX86Lea, m) && ops.size() == 2) {
    flow.category = FormCategory::kAddress;
    if (const auto* mem = std::get_if<MemoryOp>(&ops[0])) b.ReadAddress(*mem);
    b.WriteOperand(ops[1]);
    return b.Take();
  }
  if (Matches(kX86Push, m) && ops.size() == 1) {
    flow.category = FormCategory::kStore;
    b.ReadOperand(ops[0]);
    return b.Take();
  }
  if (Matches(kX86Pop, m) && ops.size() == 1) {
    flow.category = FormCategory::kLoad;
    b.WriteOperand(ops[0]);
    return b.Take();
  }
  if (Matches(kX86Move, m) && (ops.size() == 2 || ops.size() == 3)) {
    const Operand& dest = ops.back();
    const bool load = std::any_of(ops.begin(), ops.end() - 1, [](const Operand& op) {
      return std::holds_alternative<MemoryOp>(op);
    });
    const bool store = std::holds_alternative<MemoryOp>(dest);
    flow.category = load ? FormCategory::kLoad
                         : (store ? FormCategory::kStore : FormCategory::kMove);
    for (auto it = ops.begin(); it != ops.end() - 1; ++it) b.ReadOperand(*it);
    b.WriteOperand(dest);
    const auto* reg = std::get_if<RegisterOp>(&dest);
    if (ops.size() == 2 && std::holds_alternative<ImmediateOp>(ops[0]) && reg &&
        reg->width >= 32) {
      flow.breaks_dependency = true;
    }
    return b.Take();
  }

  const bool known = Matches(kX86Integer, m) || Matches(kX86SignExtend, m) ||
                     Matches(kX86Float, m) || Matches(kX86Fma, m) ||
                     Matches(kX86Convert, m) || Matches(kX86IntegerSimd, m) ||
                     Matches(kX86Avx, m);
  if (!known) {
    Unrecognized(b, form, Isa::kX86);
    return b.Take();
  }
  flow.category = FormCategory::kCompute;

  if (ops.empty()) {
    if (m == "cltq" || m == "cdqe" || m == "cwtl" || m == "cwde" || m == "cbw") {
      b.ReadImplicit("rax");
      b.WriteImplicit("rax");
    } else if (Matches(kX86SignExtend, m)) {
      b.ReadImplicit("rax");
      b.WriteImplicit("rdx");
    }
    return b.Take();
  }

  if (kX86ZeroIdioms.count(m) && AllSameRegister(ops)) {
    b.Write(std::get<RegisterOp>(ops.back()));
    flow.breaks_dependency = true;
    return b.Take();
  }

  const std::string base = m.substr(0, m.find_last_not_of("bwlq") + 1);
  if (ops.size() == 1 && (m.rfind("mul", 0) == 0 || m.rfind("imul", 0) == 0 ||
                          m.rfind("div", 0) == 0 || m.rfind("idiv", 0) == 0)) {
    b.ReadOperand(ops[0]);
    b.ReadImplicit("rax");
    if (m.find("div") != std::string::npos) b.ReadImplicit("rdx");
    b.WriteImplicit("rax");
    b.WriteImplicit("rdx");
    return b.Take();
  }

  const Operand& dest = ops.back();
  const bool write_only = IsWriteOnlyX86(m, ops.size());
  for (auto it = ops.begin(); it != ops.end() - 1; ++it) b.ReadOperand(*it);
  if (const auto* mem = std::get_if<MemoryOp>(&dest)) {
    // Read-modify-write memory destination.
    if (!write_only) b.Load(*mem);
    b.Store(*mem);
    return b.Take();
  }
  if (!write_only) b.ReadOperand(dest);
  if (m == "xchg" || base == "xchg" || base == "xadd") b.WriteOperand(ops.front());
  b.WriteOperand(dest);
  return b.Take();
}

// ------------------------------------------------------------ AArch64

const std::set<std::string> kA64Branches = {
    "b", "bl", "br", "blr", "ret", "cbz", "cbnz", "tbz", "tbnz", "beq",
    "bne", "bcs", "bhs", "bcc", "blo", "bmi", "bpl", "bvs", "bvc", "bhi",
    "bls", "bge", "blt", "bgt", "ble", "bal"};
const std::set<std::string> kA64Compares = {"cmp",  "cmn",  "tst",   "fcmp",  "fcmpe",
                                            "ccmp", "ccmn", "fccmp", "fccmpe"};
const std::set<std::string> kA64Other = {"nop", "isb", "dmb", "dsb", "yield", "hint",
                                         "prfm", "prfum", "svc", "brk", "hlt"};
const std::set<std::string> kA64Accumulate = {
    "fmla",  "fmls",   "mla",    "mls",    "movk",   "bfi",    "bfxil",
    "bfm",   "ins",    "sdot",   "udot",   "fmlal",  "fmlal2", "fmlsl",
    "fmlsl2", "bsl",   "bit",    "bif",    "sqrdmlah", "sqrdmlsh", "saba",
    "uaba",  "sabal",  "uabal",  "sabal2", "uabal2", "smlal",  "smlal2",
    "umlal", "umlal2", "smlsl",  "smlsl2", "umlsl",  "umlsl2", "fcmla",
    "tbx",   "sadalp", "uadalp", "usra",   "ssra",   "ursra",  "srsra",
    "sli",   "sri",    "xtn2",   "fcvtn2", "sqxtn2", "uqxtn2"};
const std::set<std::string> kA64StatusStores = {"stxr", "stlxr", "stxp", "stlxp",
                                                "stxrb", "stlxrb", "stxrh", "stlxrh"};
const std::set<std::string> kA64ImmediateMoves = {"mov", "movz", "movn", "movi",
                                                  "mvni", "fmov"};
const std::regex kA64Known(
    R"((adds?|subs?|adcs?|sbcs?|negs?|ngcs?|ands?|orr|orn|eor|eon|bics?|mvn|mov|movz|movn|movk|mul|madd|msub|mneg|[su]mull2?|[su]mulh|[su]maddl|[su]msubl|[su]div|lslv?|lsrv?|asrv?|rorv?|[su]xt[bhw]|[su]bfx|[su]bfiz|bfi|bfxil|extr?|csel|csinc|csinv|csneg|csetm?|cinc|cinv|cneg|clz|cls|rbit|rev(16|32|64)?|adrp?)"
    R"(|f(add|sub|mul|div|madd|msub|nmadd|nmsub|nmul|abs|neg|sqrt|max|min|maxnm|minnm|mov|csel|abd|recpe|rsqrte|recps|rsqrts|addp|maxp|minp|maxnmp|minnmp|maxv|minv|mulx|cvt[a-z0-9]*|rint[a-z]*))"
    R"(|[su]cvtf|movi|mvni|not|dup|umov|smov|ext|zip[12]|uzp[12]|trn[12]|tbl|addp|addv|[su]addlv|[su]maxv|[su]minv|[su]addl2?|[su]subl2?|[su]addw2?|[su]subw2?|cm(eq|gt|ge|hi|hs|tst|le|lt)|shl|[su]shr|[su]shll2?|[su]xtl2?|xtn|[su]qxtn|[su]abd|[su]max|[su]min|abs|cnt|uaddlp|saddlp|[su]rshr|[su]qadd|[su]qsub|sqdmulh|sqrdmulh|[su]hadd|[su]rhadd|pmull2?|aes[a-z]*|sha[a-z0-9]*|crc32[a-z]*)"
    R"())");

DataFlow AArch64DataFlow(const InstructionForm& form) {
  FlowBuilder b;
  const std::string& m = form.mnemonic;
  const auto& ops = form.operands;
  DataFlow& flow = b.flow();

  if (kA64Branches.count(m) || m.rfind("b.", 0) == 0) {
    flow.category = FormCategory::kBranch;
    for (const auto& op : ops) {
      if (const auto* reg = std::get_if<RegisterOp>(&op)) b.Read(*reg);
    }
    return b.Take();
  }
  if (kA64Compares.count(m)) {
    flow.category = FormCategory::kCompare;
    for (const auto& op : ops) b.ReadOperand(op);
    return b.Take();
  }
  if (kA64Other.count(m)) {
    flow.category = FormCategory::kOther;
    for (const auto& op : ops) {
      if (const auto* mem = std::get_if<MemoryOp>(&op)) b.ReadAddress(*mem);
    }
    return b.Take();
  }
  const auto mem_it = std::find_if(ops.begin(), ops.end(), [](const Operand& op) {
    return std::holds_alternative<MemoryOp>(op);
  });
  if (m.rfind("ld", 0) == 0) {
    flow.category = FormCategory::kLoad;
    for (auto it = ops.begin(); it != mem_it; ++it) b.WriteOperand(*it);
    if (mem_it != ops.end()) b.Load(std::get<MemoryOp>(*mem_it));
    return b.Take();
  }
  if (m.rfind("st", 0) == 0) {
    flow.category = FormCategory::kStore;
    auto it = ops.begin();
    if (kA64StatusStores.count(m) && it != mem_it) b.WriteOperand(*it++);
    for (; it != mem_it; ++it) b.ReadOperand(*it);
    if (mem_it != ops.end()) b.Store(std::get<MemoryOp>(*mem_it));
    return b.Take();
  }
  if (!Matches(kA64Known, m) && !kA64Accumulate.count(m)) {
    Unrecognized(b, form, Isa::kAArch64);
    return b.Take();
  }
  if (ops.empty()) {
    flow.category = FormCategory::kOther;
    return b.Take();
  }

  const bool all_immediate_sources =
      ops.size() >= 2 &&
      std::holds_alternative<ImmediateOp>(ops[1]) &&
      std::all_of(ops.begin() + 1, ops.end(), [](const Operand& op) {
        return std::holds_alternative<ImmediateOp>(op) ||
               std::holds_alternative<IdentifierOp>(op);
      });
  flow.category = (m == "mov" || m == "fmov" || kA64ImmediateMoves.count(m))
                      ? FormCategory::kMove
                      : FormCategory::kCompute;
  if ((m == "eor" && ops.size() == 3 && AllSameRegister(ops)) ||
      (kA64ImmediateMoves.count(m) && all_immediate_sources)) {
    b.WriteOperand(ops[0]);
    flow.breaks_dependency = true;
    return b.Take();
  }

  const Operand& dest = ops[0];
  const auto* dest_reg = std::get_if<RegisterOp>(&dest);
  const bool lane_insert =
      dest_reg && dest_reg->spelling.find('[') != std::string::npos;
  if (kA64Accumulate.count(m) || lane_insert) b.ReadOperand(dest);
  for (auto it = ops.begin() + 1; it != ops.end(); ++it) b.ReadOperand(*it);
  b.WriteOperand(dest);
  return b.Take();
}

}  // namespace

bool DataFlow::ReadsRegister(const std::string& reg) const {
  return std::find(sources.begin(), sources.end(), reg) != sources.end();
}

bool DataFlow::WritesRegister(const std::string& reg) const {
  return std::find(destinations.begin(), destinations.end(), reg) != destinations.end();
}

DataFlow GetDataFlow(const InstructionForm& form, Isa isa) {
  if (!form.is_instruction()) return DataFlow{};
  return isa == Isa::kX86 ? X86DataFlow(form) : AArch64DataFlow(form);
}

std::optional<SplitForm> SplitMemoryForm(const InstructionForm& form, Isa isa) {
  if (isa != Isa::kX86 || !form.is_instruction()) return std::nullopt;
  const DataFlow flow = GetDataFlow(form, isa);
  if ((flow.category != FormCategory::kCompute && flow.category != FormCategory::kCompare) ||
      flow.mem_loads.empty()) {
    return std::nullopt;
  }
  // Register class of the temporary follows the other register operands.
  RegisterOp temporary;
  temporary.name = kLoadTemporary;
  temporary.spelling = kLoadTemporary;
  for (const auto& op : form.operands) {
    if (const auto* reg = std::get_if<RegisterOp>(&op)) {
      temporary.reg_class = reg->reg_class;
      temporary.width = reg->width;
    }
  }
  SplitForm split;
  split.compute_part = form;
  split.load_part.line_number = form.line_number;
  split.load_part.mnemonic = "load";
  split.load_part.source = form.source;
  for (std::size_t i = 0; i < form.operands.size(); ++i) {
    if (std::holds_alternative<MemoryOp>(form.operands[i])) {
      split.load_part.operands.push_back(form.operands[i]);
      split.compute_part.operands[i] = temporary;
      split.stores_result = i + 1 == form.operands.size();
      break;
    }
  }
  return split;
}

}  // namespace incore
