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

#include "incore/machine_model.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace incore {
namespace {

const std::set<std::string> kRegisterClasses = {"gp", "fp", "vec", "flag"};
const std::set<std::string> kOtherClasses = {"mem", "imm", "id", "list", "*"};

bool IsValidClassPattern(const std::string& pattern) {
  if (kOtherClasses.count(pattern)) return true;
  std::size_t split = 0;
  while (split < pattern.size() && std::isalpha(static_cast<unsigned char>(pattern[split]))) {
    ++split;
  }
  if (!kRegisterClasses.count(pattern.substr(0, split))) return false;
  const std::string width = pattern.substr(split);
  if (width == "*") return true;
  return !width.empty() && std::all_of(width.begin(), width.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Cycles ScalarCycles(const YAML::Node& node, const std::string& where) {
  if (!node || !node.IsScalar()) throw Error(where + ": expected a cycle value");
  try {
    return ParseCycles(node.Scalar());
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
}

std::vector<std::string> StringList(const YAML::Node& node, const std::string& where) {
  std::vector<std::string> out;
  if (!node) return out;
  if (node.IsScalar()) return {node.Scalar()};
  if (!node.IsSequence()) throw Error(where + ": expected a list");
  for (const auto& item : node) {
    if (!item.IsScalar()) throw Error(where + ": expected a list of names");
    out.push_back(item.Scalar());
  }
  return out;
}

// [[cycles, [ports]], ...] or [[cycles, port], ...]
PortPressureList ParsePressure(const YAML::Node& node, const std::string& where) {
  PortPressureList out;
  if (!node) return out;
  if (!node.IsSequence()) throw Error(where + ": pressure must be a list");
  for (const auto& item : node) {
    if (!item.IsSequence() || item.size() != 2) {
      throw Error(where + ": pressure items are [cycles, ports]");
    }
    out.push_back({ScalarCycles(item[0], where), StringList(item[1], where)});
  }
  return out;
}

void EmitPressure(YAML::Emitter& out, const PortPressureList& pressure) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& item : pressure) {
    out << YAML::BeginSeq << FormatCycles(item.cycles) << YAML::BeginSeq;
    for (const auto& port : item.ports) out << port;
    out << YAML::EndSeq << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

void EmitList(YAML::Emitter& out, const std::vector<std::string>& list) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& item : list) out << item;
  out << YAML::EndSeq;
}

std::map<std::string, Cycles> PerPort(const PortPressureList& pressure) {
  std::map<std::string, Cycles> per_port;
  for (const auto& item : pressure) {
    const Cycles share = item.cycles / static_cast<std::int64_t>(item.ports.size());
    for (const auto& port : item.ports) per_port[port] += share;
  }
  return per_port;
}

Cycles MaxPortShare(const PortPressureList& pressure) {
  Cycles best(0);
  for (const auto& [port, cycles] : PerPort(pressure)) best = std::max(best, cycles);
  return best;
}

std::string EntryName(const DbEntry& entry) {
  std::string name = entry.mnemonic + "(";
  for (std::size_t i = 0; i < entry.operands.size(); ++i) {
    if (i) name += ",";
    name += entry.operands[i];
  }
  return name + ")";
}

void ValidatePressure(const MachineModel& model, const PortPressureList& pressure,
                      const std::string& where) {
  for (const auto& item : pressure) {
    if (item.cycles <= Cycles(0)) {
      throw Error(where + ": non-positive cycle value " + FormatCycles(item.cycles));
    }
    if (item.ports.empty()) throw Error(where + ": empty port group");
    for (const auto& port : item.ports) {
      if (std::find(model.ports.begin(), model.ports.end(), port) == model.ports.end()) {
        throw Error(where + ": unknown port '" + port + "'");
      }
    }
  }
}

int MatchScore(const std::string& pattern, const std::string& actual) {
  if (pattern == actual) return 2;
  if (pattern == "*") return 0;
  return 1;
}

const DbEntry* BestEntry(const MachineModel& model, const std::string& mnemonic,
                         const std::vector<std::string>& signature) {
  const DbEntry* best = nullptr;
  int best_score = -1;
  for (const auto& entry : model.entries) {
    if (entry.mnemonic != mnemonic || entry.operands.size() != signature.size()) continue;
    int score = 0;
    bool ok = true;
    for (std::size_t i = 0; i < signature.size() && ok; ++i) {
      ok = OperandClassMatches(entry.operands[i], signature[i]);
      if (ok) score += MatchScore(entry.operands[i], signature[i]);
    }
    if (ok && score > best_score) {
      best = &entry;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

MachineModel ParseModel(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(std::string("malformed machine model: ") + e.what());
  }
  if (!root.IsMap()) throw Error("malformed machine model: expected a mapping");
  MachineModel model;
  try {
    model.format_version = root["format_version"] ? root["format_version"].as<int>() : 0;
    if (model.format_version != kModelFormatVersion) {
      throw Error("unsupported machine model format_version " +
                  std::to_string(model.format_version) + " (expected " +
                  std::to_string(kModelFormatVersion) + ")");
    }
    if (!root["arch_name"]) throw Error("machine model lacks arch_name");
    model.arch_name = root["arch_name"].as<std::string>();
    const auto isa = ParseIsa(root["isa"] ? root["isa"].as<std::string>() : "");
    if (!isa) throw Error("machine model lacks a valid isa (x86 or aarch64)");
    model.isa = *isa;
    model.ports = StringList(root["ports"], "ports");
    if (const auto load = root["load"]) {
      model.load_latency = ScalarCycles(load["latency"], "load.latency");
      model.load_pressure = ParsePressure(load["pressure"], "load.pressure");
      model.load_throughput = load["throughput"]
                                  ? ScalarCycles(load["throughput"], "load.throughput")
                                  : MaxPortShare(model.load_pressure);
    }
    if (const auto store = root["store"]) {
      model.store_pressure = ParsePressure(store["pressure"], "store.pressure");
    }
    if (const auto aliases = root["aliases"]) {
      if (!aliases.IsMap()) throw Error("aliases must be a mapping");
      for (const auto& kv : aliases) {
        model.aliases[kv.first.as<std::string>()] = kv.second.as<std::string>();
      }
    }
    int index = 0;
    for (const auto& node : root["entries"]) {
      ++index;
      DbEntry entry;
      if (!node.IsMap() || !node["mnemonic"]) {
        throw Error("entry " + std::to_string(index) + ": missing mnemonic");
      }
      entry.mnemonic = node["mnemonic"].as<std::string>();
      entry.operands = StringList(node["operands"], "entry " + std::to_string(index));
      const std::string where = "entry " + std::to_string(index) + " " + EntryName(entry);
      entry.latency = node["latency"] ? ScalarCycles(node["latency"], where) : Cycles(0);
      entry.candidate_ports = StringList(node["ports"], where);
      entry.port_pressure = ParsePressure(node["pressure"], where);
      if (node["throughput"]) {
        entry.inverse_throughput = ScalarCycles(node["throughput"], where);
      }
      if (!node["pressure"] && !entry.candidate_ports.empty()) {
        if (entry.inverse_throughput <= Cycles(0)) {
          throw Error(where + ": non-positive throughput for derived pressure");
        }
        entry.port_pressure = DerivePressure(entry.inverse_throughput, entry.candidate_ports);
      }
      if (!node["throughput"]) entry.inverse_throughput = MaxPortShare(entry.port_pressure);
      if (node["writeback_latency"]) {
        entry.writeback_latency = ScalarCycles(node["writeback_latency"], where);
      }
      if (node["uops"]) entry.uops = node["uops"].as<int>();
      model.entries.push_back(std::move(entry));
    }
  } catch (const YAML::Exception& e) {
    throw Error(std::string("malformed machine model: ") + e.what());
  }
  ValidateModel(model);
  return model;
}

MachineModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read machine model '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseModel(buffer.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string SerializeModel(const MachineModel& model) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "format_version" << YAML::Value << model.format_version;
  out << YAML::Key << "arch_name" << YAML::Value << model.arch_name;
  out << YAML::Key << "isa" << YAML::Value << std::string(IsaName(model.isa));
  out << YAML::Key << "ports" << YAML::Value;
  EmitList(out, model.ports);
  out << YAML::Key << "load" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "latency" << YAML::Value << FormatCycles(model.load_latency);
  out << YAML::Key << "throughput" << YAML::Value << FormatCycles(model.load_throughput);
  out << YAML::Key << "pressure" << YAML::Value;
  EmitPressure(out, model.load_pressure);
  out << YAML::EndMap;
  out << YAML::Key << "store" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "pressure" << YAML::Value;
  EmitPressure(out, model.store_pressure);
  out << YAML::EndMap;
  out << YAML::Key << "aliases" << YAML::Value << YAML::BeginMap;
  for (const auto& [from, to] : model.aliases) out << YAML::Key << from << YAML::Value << to;
  out << YAML::EndMap;
  out << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
  for (const auto& entry : model.entries) {
    out << YAML::BeginMap;
    out << YAML::Key << "mnemonic" << YAML::Value << entry.mnemonic;
    out << YAML::Key << "operands" << YAML::Value;
    EmitList(out, entry.operands);
    out << YAML::Key << "latency" << YAML::Value << FormatCycles(entry.latency);
    out << YAML::Key << "throughput" << YAML::Value
        << FormatCycles(entry.inverse_throughput);
    out << YAML::Key << "pressure" << YAML::Value;
    EmitPressure(out, entry.port_pressure);
    if (!entry.candidate_ports.empty()) {
      out << YAML::Key << "ports" << YAML::Value;
      EmitList(out, entry.candidate_ports);
    }
    if (entry.writeback_latency) {
      out << YAML::Key << "writeback_latency" << YAML::Value
          << FormatCycles(*entry.writeback_latency);
    }
    if (entry.uops) out << YAML::Key << "uops" << YAML::Value << *entry.uops;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void StoreModel(const MachineModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write machine model '" + path + "'");
  out << SerializeModel(model);
  if (!out) throw Error("cannot write machine model '" + path + "'");
}

void ValidateModel(const MachineModel& model) {
  std::set<std::string> ports;
  for (const auto& port : model.ports) {
    if (!ports.insert(port).second) throw Error("duplicate port '" + port + "'");
  }
  if (model.load_latency < Cycles(0)) throw Error("load.latency: negative cycle value");
  ValidatePressure(model, model.load_pressure, "load.pressure");
  ValidatePressure(model, model.store_pressure, "store.pressure");
  std::set<std::pair<std::string, std::vector<std::string>>> keys;
  int index = 0;
  for (const auto& entry : model.entries) {
    ++index;
    const std::string where = "entry " + std::to_string(index) + " " + EntryName(entry);
    if (entry.mnemonic.empty()) throw Error(where + ": empty mnemonic");
    for (const auto& op : entry.operands) {
      if (!IsValidClassPattern(op)) throw Error(where + ": unknown operand class '" + op + "'");
    }
    if (!keys.insert({entry.mnemonic, entry.operands}).second) {
      throw Error(where + ": duplicate entry");
    }
    if (entry.latency < Cycles(0)) throw Error(where + ": negative latency");
    if (entry.inverse_throughput < Cycles(0)) throw Error(where + ": negative throughput");
    if (entry.writeback_latency && *entry.writeback_latency < Cycles(0)) {
      throw Error(where + ": negative writeback_latency");
    }
    ValidatePressure(model, entry.port_pressure, where);
    for (const auto& port : entry.candidate_ports) {
      if (!ports.count(port)) throw Error(where + ": unknown port '" + port + "'");
    }
  }
}

std::vector<std::string> LintModel(const MachineModel& model) {
  std::vector<std::string> findings;
  for (const auto& entry : model.entries) {
    if (entry.port_pressure.empty()) continue;
    const Cycles total = TotalPressure(entry.port_pressure);
    if (total < Cycles(1)) {
      findings.push_back(EntryName(entry) + ": total port pressure " +
                         FormatCycles(total) + " cy is below one cycle");
    }
    if (entry.uops == 1 && total < entry.inverse_throughput) {
      findings.push_back(EntryName(entry) + ": total port pressure " +
                         FormatCycles(total) + " cy is below the inverse throughput");
    }
  }
  return findings;
}

std::string OperandClass(const Operand& operand) {
  if (const auto* reg = std::get_if<RegisterOp>(&operand)) {
    return std::string(RegisterClassName(reg->reg_class)) + std::to_string(reg->width);
  }
  if (std::holds_alternative<MemoryOp>(operand)) return "mem";
  if (std::holds_alternative<ImmediateOp>(operand)) return "imm";
  if (std::holds_alternative<RegisterListOp>(operand)) return "list";
  return "id";
}

std::vector<std::string> OperandSignature(const InstructionForm& form) {
  std::vector<std::string> signature;
  for (const auto& op : form.operands) signature.push_back(OperandClass(op));
  return signature;
}

bool OperandClassMatches(const std::string& pattern, const std::string& actual) {
  if (pattern == actual || pattern == "*") return true;
  if (pattern.size() < 2 || pattern.back() != '*') return false;
  const std::string prefix = pattern.substr(0, pattern.size() - 1);
  if (actual.rfind(prefix, 0) != 0 || actual.size() == prefix.size()) return false;
  return std::isdigit(static_cast<unsigned char>(actual[prefix.size()]));
}

const DbEntry* FindEntry(const MachineModel& model, const std::string& mnemonic,
                         const std::vector<std::string>& operands) {
  for (const auto& entry : model.entries) {
    if (entry.mnemonic == mnemonic && entry.operands == operands) return &entry;
  }
  return nullptr;
}

std::optional<DbEntry> Lookup(const MachineModel& model, const InstructionForm& form) {
  if (form.mnemonic.empty()) return std::nullopt;
  std::vector<std::string> names = {form.mnemonic};
  if (model.isa == Isa::kX86 && form.mnemonic.size() > 1 &&
      std::string("bwlq").find(form.mnemonic.back()) != std::string::npos) {
    names.push_back(form.mnemonic.substr(0, form.mnemonic.size() - 1));
  }
  const auto signature = OperandSignature(form);
  for (const auto& name : names) {
    if (const DbEntry* entry = BestEntry(model, name, signature)) return *entry;
    if (auto alias = model.aliases.find(name); alias != model.aliases.end()) {
      if (const DbEntry* entry = BestEntry(model, alias->second, signature)) return *entry;
    }
  }
  return std::nullopt;
}

PortPressureList DerivePressure(Cycles inverse_throughput,
                                const std::vector<std::string>& ports) {
  if (ports.empty()) throw Error("cannot derive port pressure for an empty port set");
  if (inverse_throughput <= Cycles(0)) throw Error("inverse throughput must be positive");
  PortPressureList out;
  const Cycles share = inverse_throughput / static_cast<std::int64_t>(ports.size());
  for (const auto& port : ports) out.push_back({share, {port}});
  return out;
}

DbEntry CombineSplit(const DbEntry& load_entry, const DbEntry& compute_entry) {
  DbEntry combined = compute_entry;
  combined.latency = load_entry.latency + compute_entry.latency;
  combined.inverse_throughput =
      std::max(load_entry.inverse_throughput, compute_entry.inverse_throughput);
  combined.port_pressure = load_entry.port_pressure;
  for (const auto& item : compute_entry.port_pressure) {
    auto same = std::find_if(combined.port_pressure.begin(), combined.port_pressure.end(),
                             [&](const PressureItem& p) { return p.ports == item.ports; });
    if (same != combined.port_pressure.end()) {
      same->cycles += item.cycles;
    } else {
      combined.port_pressure.push_back(item);
    }
  }
  combined.candidate_ports.clear();
  return combined;
}

Cycles TotalPressure(const PortPressureList& pressure) {
  Cycles total(0);
  for (const auto& item : pressure) total += item.cycles;
  return total;
}

}  // namespace incore
