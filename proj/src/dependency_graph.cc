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

#include "incore/dependency_graph.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

namespace incore {
namespace {

struct Producer {
  int vertex = 0;
  bool via_writeback = false;
};

class DagBuilder {
 public:
  int AddVertex(VertexKind kind, const ResolvedForm& form, std::size_t index, int copy,
                Cycles latency_out) {
    DepVertex v;
    v.id = static_cast<int>(vertices_.size());
    v.kind = kind;
    v.line_number = form.form.line_number;
    v.copy = copy;
    v.form_index = index;
    v.latency_out = latency_out;
    v.writeback_latency = kind == VertexKind::kInstruction ? form.writeback_latency
                                                           : latency_out;
    vertices_.push_back(v);
    return v.id;
  }

  bool HasProducer(const std::string& reg) const { return writers_.count(reg) > 0; }

  void Read(const std::string& reg, int to) {
    auto it = writers_.find(reg);
    if (it == writers_.end()) return;
    const DepVertex& src = vertices_[it->second.vertex];
    AddEdge({src.id, to,
             it->second.via_writeback ? src.writeback_latency : src.latency_out, reg,
             it->second.via_writeback});
  }

  void AddEdge(DepEdge edge) {
    auto key = std::make_pair(edge.from, edge.to);
    auto it = edges_.find(key);
    if (it == edges_.end() || it->second.weight < edge.weight) edges_[key] = std::move(edge);
  }

  void Write(const std::string& reg, int vertex, bool via_writeback) {
    writers_[reg] = {vertex, via_writeback};
  }

  DependencyDag Finish(int copies, WritebackCoupling coupling) {
    std::vector<DepEdge> edges;
    for (auto& [key, edge] : edges_) edges.push_back(std::move(edge));
    DependencyDag dag = MakeDag(std::move(vertices_), std::move(edges));
    dag.copies = copies;
    dag.coupling = coupling;
    return dag;
  }

 private:
  std::vector<DepVertex> vertices_;
  std::map<std::pair<int, int>, DepEdge> edges_;
  std::map<std::string, Producer> writers_;
};

std::vector<std::string> WritebackSources(const DataFlow& flow) {
  std::vector<std::string> regs;
  auto add = [&](const std::optional<RegisterOp>& reg) {
    if (reg && std::find(regs.begin(), regs.end(), reg->name) == regs.end()) {
      regs.push_back(reg->name);
    }
  };
  for (const auto* list : {&flow.mem_loads, &flow.mem_stores}) {
    for (const auto& mem : *list) {
      if (mem.writeback == Writeback::kNone) continue;
      add(mem.base);
      add(mem.increment_register);
    }
  }
  return regs;
}

bool Contains(const std::vector<std::string>& list, const std::string& item) {
  return std::find(list.begin(), list.end(), item) != list.end();
}

std::string VertexLabel(const DepVertex& v) {
  std::string label = std::to_string(v.line_number);
  if (v.kind == VertexKind::kLoad) label += " load";
  if (v.kind == VertexKind::kWriteback) label += " wb";
  return label;
}

}  // namespace

int DependencyDag::Twin(int vertex, int copy) const {
  const DepVertex& v = vertices.at(vertex);
  for (const auto& other : vertices) {
    if (other.copy == copy && other.form_index == v.form_index && other.kind == v.kind) {
      return other.id;
    }
  }
  return -1;
}

DependencyDag BuildDag(const std::vector<ResolvedForm>& forms, int copies,
                       WritebackCoupling coupling) {
  if (copies != 1 && copies != 2) throw Error("a dependency graph has one or two copies");
  DagBuilder b;
  for (int copy = 1; copy <= copies; ++copy) {
    for (std::size_t i = 0; i < forms.size(); ++i) {
      const ResolvedForm& f = forms[i];
      if (!f.is_instruction) continue;
      const DataFlow& flow = f.flow;
      const bool load_vertex =
          f.split && std::any_of(flow.address_sources.begin(), flow.address_sources.end(),
                                 [&](const std::string& r) { return b.HasProducer(r); });
      int load_id = -1;
      if (load_vertex) {
        load_id = b.AddVertex(VertexKind::kLoad, f, i, copy, f.load_latency);
        for (const auto& reg : flow.address_sources) b.Read(reg, load_id);
      }
      const int main_id = b.AddVertex(VertexKind::kInstruction, f, i, copy,
                                      load_vertex ? f.compute_latency : f.latency);
      for (const auto& reg : load_vertex ? flow.data_sources : flow.sources) {
        b.Read(reg, main_id);
      }
      if (load_vertex) {
        b.AddEdge({load_id, main_id, f.load_latency, kLoadTemporary, false});
      }
      int writeback_id = -1;
      if (coupling == WritebackCoupling::kDecoupled && !flow.writeback_destinations.empty()) {
        writeback_id = b.AddVertex(VertexKind::kWriteback, f, i, copy, f.writeback_latency);
        for (const auto& reg : WritebackSources(flow)) b.Read(reg, writeback_id);
      }
      for (const auto& reg : flow.destinations) {
        if (!Contains(flow.writeback_destinations, reg)) {
          b.Write(reg, main_id, false);
        } else if (writeback_id >= 0) {
          b.Write(reg, writeback_id, false);
        } else {
          b.Write(reg, main_id, true);
        }
      }
    }
  }
  return b.Finish(copies, coupling);
}

DependencyDag MakeDag(std::vector<DepVertex> vertices, std::vector<DepEdge> edges) {
  DependencyDag dag;
  dag.vertices = std::move(vertices);
  dag.edges = std::move(edges);
  std::sort(dag.edges.begin(), dag.edges.end(), [](const DepEdge& a, const DepEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  dag.out.assign(dag.vertices.size(), {});
  for (std::size_t e = 0; e < dag.edges.size(); ++e) {
    const auto& edge = dag.edges[e];
    if (edge.from < 0 || edge.to < 0 ||
        static_cast<std::size_t>(edge.from) >= dag.vertices.size() ||
        static_cast<std::size_t>(edge.to) >= dag.vertices.size()) {
      throw Error("edge refers to an unknown vertex");
    }
    dag.out[edge.from].push_back(e);
  }
  VerifyDag(dag);
  return dag;
}

void VerifyDag(const DependencyDag& dag) {
  for (std::size_t i = 0; i < dag.vertices.size(); ++i) {
    if (dag.vertices[i].id != static_cast<int>(i)) throw Error("vertex ids are not dense");
  }
  for (const auto& edge : dag.edges) {
    if (edge.to <= edge.from) {
      throw Error("dependency graph is not topologically ordered (edge " +
                  std::to_string(edge.from) + " -> " + std::to_string(edge.to) + ")");
    }
    const DepVertex& src = dag.vertices[edge.from];
    const Cycles expected = edge.via_writeback ? src.writeback_latency : src.latency_out;
    if (edge.weight != expected) {
      throw Error("edge " + std::to_string(edge.from) + " -> " + std::to_string(edge.to) +
                  " does not carry its source latency");
    }
  }
}

PathResult CriticalPath(const DependencyDag& dag) {
  PathResult path;
  path.kind = PathResult::Kind::kCriticalPath;
  const std::size_t n = dag.vertices.size();
  if (n == 0) return path;
  std::vector<Cycles> best(n);
  std::vector<std::size_t> next_edge(n, SIZE_MAX);
  for (std::size_t v = n; v-- > 0;) {
    best[v] = dag.vertices[v].latency_out;
    for (std::size_t e : dag.out[v]) {
      const DepEdge& edge = dag.edges[e];
      const Cycles candidate = edge.weight + best[edge.to];
      if (candidate > best[v]) {
        best[v] = candidate;
        next_edge[v] = e;
      }
    }
  }
  std::size_t start = 0;
  for (std::size_t v = 1; v < n; ++v) {
    if (best[v] > best[start]) start = v;
  }
  path.total_latency = best[start];
  for (std::size_t v = start;;) {
    path.vertices.push_back(static_cast<int>(v));
    if (next_edge[v] == SIZE_MAX) {
      path.contributions.push_back(dag.vertices[v].latency_out);
      break;
    }
    const DepEdge& edge = dag.edges[next_edge[v]];
    path.contributions.push_back(edge.weight);
    v = edge.to;
  }
  return path;
}

std::vector<PathResult> FindLcds(const DependencyDag& doubled) {
  std::vector<PathResult> found;
  const std::size_t n = doubled.vertices.size();
  std::vector<int> twin(n, -1);
  {
    std::map<std::tuple<std::size_t, VertexKind>, int> second;
    for (const auto& v : doubled.vertices) {
      if (v.copy == 2) second[{v.form_index, v.kind}] = v.id;
    }
    for (const auto& v : doubled.vertices) {
      if (v.copy != 1) continue;
      auto it = second.find({v.form_index, v.kind});
      if (it != second.end()) twin[v.id] = it->second;
    }
  }
  std::vector<std::optional<Cycles>> reach(n);
  std::vector<std::size_t> next_edge(n);
  for (const auto& root : doubled.vertices) {
    if (root.copy != 1 || root.kind == VertexKind::kLoad || twin[root.id] < 0) continue;
    const int target = twin[root.id];
    std::fill(reach.begin(), reach.end(), std::nullopt);
    reach[target] = Cycles(0);
    for (int v = target - 1; v >= root.id; --v) {
      for (std::size_t e : doubled.out[v]) {
        const DepEdge& edge = doubled.edges[e];
        if (edge.to > target || !reach[edge.to]) continue;
        const Cycles candidate = edge.weight + *reach[edge.to];
        if (!reach[v] || candidate > *reach[v]) {
          reach[v] = candidate;
          next_edge[v] = e;
        }
      }
    }
    if (!reach[root.id]) continue;
    PathResult path;
    path.kind = PathResult::Kind::kLcdCycle;
    path.total_latency = *reach[root.id];
    for (int v = root.id; v != target;) {
      const DepEdge& edge = doubled.edges[next_edge[v]];
      path.vertices.push_back(v);
      path.contributions.push_back(edge.weight);
      v = edge.to;
    }
    path.vertices.push_back(target);
    path.contributions.push_back(Cycles(0));
    found.push_back(std::move(path));
  }
  std::stable_sort(found.begin(), found.end(), [](const PathResult& a, const PathResult& b) {
    if (a.total_latency != b.total_latency) return a.total_latency > b.total_latency;
    return a.vertices.front() < b.vertices.front();
  });
  std::vector<PathResult> unique;
  std::set<std::set<int>> seen;
  for (auto& path : found) {
    std::set<int> lines;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
      lines.insert(doubled.vertices[path.vertices[i]].line_number);
    }
    if (seen.insert(lines).second) unique.push_back(std::move(path));
  }
  return unique;
}

std::vector<PathResult> FindLcds(const std::vector<ResolvedForm>& forms) {
  return FindLcds(BuildDag(forms, 2, WritebackCoupling::kDecoupled));
}

std::map<int, Cycles> MarkReportPaths(const DependencyDag& dag, const PathResult& path) {
  std::map<int, Cycles> marks;
  std::size_t count = path.vertices.size();
  if (path.kind == PathResult::Kind::kLcdCycle && count > 0) --count;
  for (std::size_t i = 0; i < count; ++i) {
    marks[dag.vertices.at(path.vertices[i]).line_number] += path.contributions[i];
  }
  return marks;
}

std::string ExportDot(const DependencyDag& dag, const PathResult& cp, const PathResult& lcd,
                      const DependencyDag* lcd_dag) {
  const DependencyDag& source = lcd_dag ? *lcd_dag : dag;
  // LCD vertices mapped onto `dag`, in cycle order without the closing twin.
  std::vector<int> cycle;
  for (std::size_t i = 0; i + 1 < lcd.vertices.size(); ++i) {
    const DepVertex& v = source.vertices.at(lcd.vertices[i]);
    int mapped = -1;
    for (const auto& candidate : dag.vertices) {
      if (candidate.copy != 1 || candidate.form_index != v.form_index) continue;
      if (candidate.kind == v.kind) {
        mapped = candidate.id;
        break;
      }
      if (candidate.kind == VertexKind::kInstruction && mapped < 0) mapped = candidate.id;
    }
    if (mapped >= 0 && (cycle.empty() || cycle.back() != mapped)) cycle.push_back(mapped);
  }
  const std::set<int> lcd_vertices(cycle.begin(), cycle.end());
  std::set<std::pair<int, int>> lcd_edges;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) lcd_edges.insert({cycle[i], cycle[i + 1]});
  const std::set<int> cp_vertices(cp.vertices.begin(), cp.vertices.end());
  std::set<std::pair<int, int>> cp_edges;
  for (std::size_t i = 0; i + 1 < cp.vertices.size(); ++i) {
    cp_edges.insert({cp.vertices[i], cp.vertices[i + 1]});
  }

  std::string dot = "digraph dependencies {\n";
  if (!dag.vertices.empty()) dot += "  node [shape=ellipse, fontname=\"monospace\"];\n";
  for (const auto& v : dag.vertices) {
    dot += "  n" + std::to_string(v.id) + " [label=\"" + VertexLabel(v) + "\"";
    if (lcd_vertices.count(v.id)) dot += ", style=filled, fillcolor=orange";
    if (cp_vertices.count(v.id)) dot += ", color=deeppink, penwidth=2";
    dot += "];\n";
  }
  for (const auto& e : dag.edges) {
    dot += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
           FormatLatency(e.weight) + "\"";
    if (cp_edges.count({e.from, e.to})) dot += ", style=dashed, color=deeppink";
    if (lcd_edges.count({e.from, e.to})) dot += ", penwidth=2, fontcolor=darkorange";
    dot += "];\n";
  }
  if (!cycle.empty() && !lcd.contributions.empty()) {
    const Cycles back = lcd.contributions[lcd.contributions.size() - 2];
    dot += "  n" + std::to_string(cycle.back()) + " -> n" + std::to_string(cycle.front()) +
           " [label=\"" + FormatLatency(back) +
           "\", color=orange, penwidth=2, constraint=false];\n";
  }
  dot += "}\n";
  return dot;
}

}  // namespace incore
