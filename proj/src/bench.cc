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

#include "incore/bench.h"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "incore/parser.h"
#include "incore/semantics.h"
#include "parse_util.h"

namespace incore {
namespace {

using internal::Trim;

std::vector<std::string> RegisterPool(const std::string& cls, Isa isa) {
  std::vector<std::string> pool;
  if (isa == Isa::kAArch64) {
    const std::map<std::string, std::string> scalar = {
        {"gp64", "x"}, {"gp32", "w"}, {"fp64", "d"}, {"fp32", "s"}, {"fp16", "h"}, {"fp8", "b"}};
    if (auto it = scalar.find(cls); it != scalar.end()) {
      if (cls.rfind("gp", 0) == 0) {
        for (int n = 2; n <= 17; ++n) pool.push_back(it->second + std::to_string(n));
      } else {
        for (int n = 0; n <= 31; ++n) {
          if (n < 8 || n >= 16) pool.push_back(it->second + std::to_string(n));
        }
      }
    } else if (cls == "vec128") {
      for (int n = 0; n <= 31; ++n) {
        if (n < 8 || n >= 16) pool.push_back("v" + std::to_string(n) + ".2d");
      }
    }
    return pool;
  }
  const std::vector<std::string> legacy = {"ax", "cx", "dx", "si"};
  const std::vector<std::string> low8 = {"al", "cl", "dl", "sil"};
  if (cls == "gp64" || cls == "gp32" || cls == "gp16" || cls == "gp8") {
    for (std::size_t i = 0; i < legacy.size(); ++i) {
      if (cls == "gp64") pool.push_back("r" + legacy[i]);
      if (cls == "gp32") pool.push_back("e" + legacy[i]);
      if (cls == "gp16") pool.push_back(legacy[i]);
      if (cls == "gp8") pool.push_back(low8[i]);
    }
    const std::map<std::string, std::string> suffix = {
        {"gp64", ""}, {"gp32", "d"}, {"gp16", "w"}, {"gp8", "b"}};
    for (int n = 8; n <= 15; ++n) pool.push_back("r" + std::to_string(n) + suffix.at(cls));
  } else if (cls == "vec128" || cls == "vec256") {
    const std::string prefix = cls == "vec128" ? "xmm" : "ymm";
    for (int n = 0; n < 16; ++n) pool.push_back(prefix + std::to_string(n));
  } else if (cls == "vec512") {
    for (int n = 0; n < 32; ++n) pool.push_back("zmm" + std::to_string(n));
  }
  return pool;
}

class Allocator {
 public:
  explicit Allocator(Isa isa) : isa_(isa) {}

  std::string Take(const std::string& cls) {
    auto& next = next_[cls];
    const auto pool = RegisterPool(cls, isa_);
    if (pool.empty()) throw Error("no benchmark registers for operand class '" + cls + "'");
    if (next >= pool.size()) {
      throw Error("not enough '" + cls + "' registers for the requested instances");
    }
    used_.push_back(pool[next]);
    return pool[next++];
  }
  const std::vector<std::string>& used() const { return used_; }

 private:
  Isa isa_;
  std::map<std::string, std::size_t> next_;
  std::vector<std::string> used_;
};

std::string Spell(const std::string& reg, Isa isa) {
  return isa == Isa::kX86 ? "%" + reg : reg;
}

std::string Immediate(Isa isa) { return isa == Isa::kX86 ? "$1" : "#1"; }

std::string Instance(const FormTemplate& t, const std::vector<std::string>& ops) {
  std::string line = "\t" + t.mnemonic;
  for (std::size_t i = 0; i < ops.size(); ++i) line += (i ? ", " : "\t") + ops[i];
  return line;
}

bool ReadsOwnDestination(const std::string& line, std::size_t dest, Isa isa) {
  const InstructionForm form = ParseLine(line, 1, isa);
  if (dest >= form.operands.size()) return false;
  const auto* reg = std::get_if<RegisterOp>(&form.operands[dest]);
  return reg && GetDataFlow(form, isa).ReadsRegister(reg->name);
}

std::string Sanitize(const std::string& text) {
  std::string out;
  for (char c : text) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

std::string WrapAssembly(const BenchKernel& k, bool markers) {
  const std::string name = "bench_" + Sanitize(k.target.Key()) +
                           (k.mode == BenchMode::kLatency ? "_lat" : "_tp");
  std::ostringstream os;
  if (k.isa == Isa::kAArch64) {
    os << "// " << k.target.Key() << " "
       << (k.mode == BenchMode::kLatency ? "latency" : "throughput") << " benchmark, "
       << k.instances << " instances per iteration\n"
       << "// x0: iteration count\n"
       << "\t.text\n\t.align\t4\n\t.globl\t" << name << "\n\t.type\t" << name
       << ", %function\n"
       << name << ":\n"
       << ".Lloop:\n";
    if (markers) os << "\tmov\tx1, #111\n\t.byte\t213,3,32,31\n";
    os << k.body;
    if (markers) os << "\tmov\tx1, #222\n\t.byte\t213,3,32,31\n";
    os << "\tsubs\tx0, x0, #1\n\tb.ne\t.Lloop\n\tret\n"
       << "\t.size\t" << name << ", .-" << name << "\n";
  } else {
    os << "# " << k.target.Key() << " "
       << (k.mode == BenchMode::kLatency ? "latency" : "throughput") << " benchmark, "
       << k.instances << " instances per iteration\n"
       << "# rdi: iteration count\n"
       << "\t.text\n\t.p2align\t4\n\t.globl\t" << name << "\n\t.type\t" << name
       << ", @function\n"
       << name << ":\n"
       << "\tpushq\t%rbx\n\tpushq\t%r12\n\tpushq\t%r13\n\tpushq\t%r14\n\tpushq\t%r15\n"
       << ".Lloop:\n";
    if (markers) os << "\tmovl\t$111, %ebx\n\t.byte\t100,103,144\n";
    os << k.body;
    if (markers) os << "\tmovl\t$222, %ebx\n\t.byte\t100,103,144\n";
    os << "\tsubq\t$1, %rdi\n\tjnz\t.Lloop\n"
       << "\tpopq\t%r15\n\tpopq\t%r14\n\tpopq\t%r13\n\tpopq\t%r12\n\tpopq\t%rbx\n\tret\n"
       << "\t.size\t" << name << ", .-" << name << "\n";
  }
  return os.str();
}

std::string MetricName(Metric metric) {
  return metric == Metric::kLatency ? "latency" : "inverse_throughput";
}

std::string EntryKey(const FormTemplate& form) {
  std::string key = form.mnemonic + "(";
  for (std::size_t i = 0; i < form.operands.size(); ++i) key += (i ? "," : "") + form.operands[i];
  return key + ")";
}

}  // namespace

std::string FormTemplate::Key() const {
  std::string key = mnemonic + "-";
  if (operands.empty()) return key + "none";
  for (std::size_t i = 0; i < operands.size(); ++i) key += (i ? "_" : "") + operands[i];
  return key;
}

FormTemplate ParseFormTemplate(const std::string& text) {
  const std::string trimmed(Trim(text));
  FormTemplate t;
  std::string rest;
  std::string separator;
  if (auto space = trimmed.find_first_of(" \t"); space != std::string::npos) {
    t.mnemonic = trimmed.substr(0, space);
    rest = std::string(Trim(trimmed.substr(space + 1)));
    separator = ",";
  } else if (auto dash = trimmed.find('-'); dash != std::string::npos) {
    t.mnemonic = trimmed.substr(0, dash);
    rest = trimmed.substr(dash + 1);
    separator = "_";
  } else {
    t.mnemonic = trimmed;
  }
  if (t.mnemonic.empty()) throw Error("empty instruction form '" + text + "'");
  if (rest == "none") rest.clear();
  std::size_t start = 0;
  while (!rest.empty() && start <= rest.size()) {
    const std::size_t end = rest.find(separator, start);
    const std::string item(Trim(std::string_view(rest).substr(start, end - start)));
    if (item.empty()) throw Error("empty operand class in '" + text + "'");
    t.operands.push_back(item);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return t;
}

BenchKernel GenerateBench(const FormTemplate& target, BenchMode mode, Isa isa,
                          const BenchOptions& options) {
  for (const auto& cls : target.operands) {
    if (cls == "mem") {
      throw Error("manual benchmark required for " + target.Key() +
                  ": memory operands need hand-written address setup");
    }
    if (cls.find('*') != std::string::npos) {
      throw Error("operand class '" + cls + "' of " + target.Key() + " is not concrete");
    }
    if (cls == "id" || cls == "list") {
      throw Error("manual benchmark required for " + target.Key() + ": operand class '" +
                  cls + "' is not generated");
    }
  }
  if (options.instances < 1) throw Error("a benchmark needs at least one instance");
  BenchKernel k;
  k.target = target;
  k.mode = mode;
  k.isa = isa;
  k.instances = mode == BenchMode::kThroughput ? std::max(8, options.instances)
                                               : options.instances;
  const std::size_t n = target.operands.size();
  const std::size_t dest = isa == Isa::kX86 ? (n ? n - 1 : 0) : 0;
  Allocator alloc(isa);

  std::vector<std::string> ops(n);
  auto fill_sources = [&](std::vector<std::string>& out, Allocator& from) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == dest || !out[i].empty()) continue;
      out[i] = target.operands[i] == "imm" ? Immediate(isa)
                                           : Spell(from.Take(target.operands[i]), isa);
    }
  };

  std::ostringstream body;
  if (mode == BenchMode::kLatency) {
    std::string chain;
    if (n > 0 && target.operands[dest] != "imm") {
      chain = Spell(alloc.Take(target.operands[dest]), isa);
      ops[dest] = chain;
    }
    std::vector<std::string> trial = ops;
    Allocator probe = alloc;
    fill_sources(trial, probe);
    if (!chain.empty() && !ReadsOwnDestination(Instance(target, trial), dest, isa)) {
      // Feed the chain register into the source nearest to the destination.
      bool linked = false;
      for (std::size_t step = 0; step < n && !linked; ++step) {
        const std::size_t i = isa == Isa::kX86 ? n - 1 - step : step;
        if (i == dest || target.operands[i] != target.operands[dest]) continue;
        ops[i] = chain;
        linked = true;
      }
      if (!linked) {
        throw Error("cannot chain " + target.Key() +
                    ": no source operand shares the destination class");
      }
    }
    fill_sources(ops, alloc);
    for (int i = 0; i < k.instances; ++i) body << Instance(target, ops) << "\n";
    if (chain.empty()) k.notes.push_back("form has no register destination; no chain formed");
  } else {
    fill_sources(ops, alloc);
    bool self_dependent = false;
    for (int i = 0; i < k.instances; ++i) {
      if (n > 0 && target.operands[dest] != "imm") {
        ops[dest] = Spell(alloc.Take(target.operands[dest]), isa);
      }
      const std::string line = Instance(target, ops);
      self_dependent = self_dependent || (n > 0 && ReadsOwnDestination(line, dest, isa));
      body << line << "\n";
    }
    if (self_dependent) {
      k.notes.push_back(
          "the destination is also a source, so every instance depends on its own "
          "previous iteration");
    }
  }
  k.body = body.str();
  for (const auto& reg : alloc.used()) k.registers.push_back(reg);
  k.assembly = WrapAssembly(k, options.markers);
  return k;
}

std::vector<MeasurementRecord> ParseMeasurements(const std::string& text,
                                                 const std::string& source_tag) {
  static const std::regex kLine(
      R"(^\s*([A-Za-z0-9_.]+)-([A-Za-z0-9_*]*)-([A-Za-z_]+)\s*:\s*([-+0-9./]+)\s*(.*)$)");
  std::vector<MeasurementRecord> records;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (Trim(line).empty()) continue;
    std::smatch m;
    const std::string where = "measurement line " + std::to_string(number);
    if (!std::regex_match(line, m, kLine)) {
      throw Error(where + ": expected '<mnemonic>-<signature>-<metric>: <value>'");
    }
    MeasurementRecord r;
    r.form = ParseFormTemplate(m[1].str() + "-" + (m[2].str().empty() ? "none" : m[2].str()));
    const std::string metric = internal::Lower(m[3].str());
    if (metric == "lt" || metric == "latency") {
      r.metric = Metric::kLatency;
    } else if (metric == "tp" || metric == "inverse_throughput") {
      r.metric = Metric::kInverseThroughput;
    } else {
      throw Error(where + ": unknown metric '" + m[3].str() + "'");
    }
    r.value = ParseCycles(m[4].str());
    if (r.value <= Cycles(0)) throw Error(where + ": measured value must be positive");
    r.source = source_tag;
    std::string rest = m[5].str();
    if (auto cc = rest.find("(clock cycles)"); cc != std::string::npos) rest.erase(cc, 14);
    std::istringstream fields(rest);
    std::string field;
    while (fields >> field) {
      if (field.rfind("ports=", 0) == 0) {
        std::stringstream ports(field.substr(6));
        std::string port;
        while (std::getline(ports, port, ',')) {
          if (!port.empty()) r.ports.push_back(port);
        }
      } else if (field.rfind("source=", 0) == 0) {
        r.source = field.substr(7);
      } else {
        throw Error(where + ": unexpected field '" + field + "'");
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string FormatMeasurement(const MeasurementRecord& r) {
  std::string line = r.form.Key() + "-" +
                     (r.metric == Metric::kLatency ? "latency" : "inverse_throughput") +
                     ": " + FormatCycles(r.value);
  if (!r.ports.empty()) {
    line += " ports=";
    for (std::size_t i = 0; i < r.ports.size(); ++i) line += (i ? "," : "") + r.ports[i];
  }
  if (!r.source.empty()) line += " source=" + r.source;
  return line;
}

bool ImportResult::has_conflicts() const {
  return std::any_of(changes.begin(), changes.end(), [](const ChangeLogEntry& c) {
    return c.kind == ChangeLogEntry::Kind::kConflict;
  });
}

ImportResult ImportMeasurements(const std::vector<MeasurementRecord>& records,
                                const MachineModel& model, bool force) {
  ImportResult result;
  result.model = model;
  MachineModel& m = result.model;
  for (const auto& r : records) {
    for (const auto& port : r.ports) {
      if (std::find(m.ports.begin(), m.ports.end(), port) == m.ports.end()) {
        throw Error("record " + r.form.Key() + " names undeclared port '" + port + "'");
      }
    }
    ChangeLogEntry change;
    change.key = EntryKey(r.form);
    change.metric = r.metric;
    change.new_value = r.value;
    auto it = std::find_if(m.entries.begin(), m.entries.end(), [&](const DbEntry& e) {
      return e.mnemonic == r.form.mnemonic && e.operands == r.form.operands;
    });
    const std::string what = change.key + " " + MetricName(r.metric);
    if (it == m.entries.end()) {
      DbEntry entry;
      entry.mnemonic = r.form.mnemonic;
      entry.operands = r.form.operands;
      if (r.metric == Metric::kLatency) {
        entry.latency = r.value;
      } else {
        entry.inverse_throughput = r.value;
        if (!r.ports.empty()) {
          entry.candidate_ports = r.ports;
          entry.port_pressure = DerivePressure(r.value, r.ports);
        }
      }
      m.entries.push_back(std::move(entry));
      change.kind = ChangeLogEntry::Kind::kCreated;
      change.message = "created " + what + " = " + FormatCycles(r.value);
      result.changes.push_back(std::move(change));
      continue;
    }
    DbEntry& entry = *it;
    Cycles& slot = r.metric == Metric::kLatency ? entry.latency : entry.inverse_throughput;
    const bool ports_change = r.metric == Metric::kInverseThroughput && !r.ports.empty() &&
                              r.ports != entry.candidate_ports;
    change.old_value = slot;
    if (slot == r.value && !ports_change) {
      change.kind = ChangeLogEntry::Kind::kUnchanged;
      change.message = "unchanged " + what + " = " + FormatCycles(r.value);
    } else if (slot != Cycles(0) && !force) {
      change.kind = ChangeLogEntry::Kind::kConflict;
      change.message = "conflict " + what + ": database " + FormatCycles(slot) +
                       ", measured " + FormatCycles(r.value) +
                       (ports_change ? " (port set differs)" : "") +
                       "; kept database value (use --force to overwrite)";
    } else {
      change.kind = ChangeLogEntry::Kind::kUpdated;
      change.message = "updated " + what + " " + FormatCycles(slot) + " -> " +
                       FormatCycles(r.value);
      slot = r.value;
      if (r.metric == Metric::kInverseThroughput) {
        if (!r.ports.empty()) entry.candidate_ports = r.ports;
        if (!entry.candidate_ports.empty()) {
          entry.port_pressure = DerivePressure(r.value, entry.candidate_ports);
        }
      }
    }
    result.changes.push_back(std::move(change));
  }
  ValidateModel(m);
  return result;
}

}  // namespace incore
