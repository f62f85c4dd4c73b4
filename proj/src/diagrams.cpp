// Copyright 2026 The Deflab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deflab/diagrams.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace deflab {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

// First-occurrence slot template of a label, over cells (ii, ij, ji, jj).
std::array<std::uint8_t, 4> Slots(PairType label) {
  auto p = pattern(label);
  if (p[0] != 0)
    for (auto& s : p) s ^= 1;
  return p;
}

std::uint32_t CountComponents(std::uint32_t v,
                              const std::vector<DiagramEdge>& edges) {
  UnionFind uf(v + 1);
  for (const auto& e : edges) uf.unite(e.a, e.b);
  std::uint32_t components = 0;
  for (std::uint32_t x = 1; x <= v; ++x)
    if (uf.find(x) == x) ++components;
  return components;
}

// Advances a strictly increasing index selection from [0, universe).
bool NextCombination(std::vector<std::size_t>& pick, std::size_t universe) {
  const auto k = pick.size();
  for (std::size_t m = k; m-- > 0;) {
    if (pick[m] < universe - k + m) {
      ++pick[m];
      for (std::size_t r = m + 1; r < k; ++r) pick[r] = pick[r - 1] + 1;
      return true;
    }
  }
  return false;
}

// Odometer over labels 1..7.
bool NextLabeling(std::vector<int>& labels) {
  for (std::size_t m = labels.size(); m-- > 0;) {
    if (++labels[m] <= 7) return true;
    labels[m] = 1;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(std::vector<ConfigEdge> edges,
                             std::optional<std::uint32_t> source_order,
                             bool allow_t0)
    : edges_(std::move(edges)), source_order_(source_order) {
  std::set<std::pair<Element, Element>> seen;
  for (const auto& e : edges_) {
    if (e.i >= e.j)
      throw std::invalid_argument("configuration edges need i < j");
    if (source_order_ && e.j >= *source_order_)
      throw std::invalid_argument("configuration element out of range");
    if (e.type == PairType::T0 && !allow_t0)
      throw std::invalid_argument("T0 pairs are not admitted");
    if (!seen.emplace(e.i, e.j).second)
      throw std::invalid_argument("repeated pair in configuration");
  }
}

bool Configuration::is_disjoint() const {
  std::set<Element> used;
  for (const auto& e : edges_) {
    if (!used.insert(e.i).second || !used.insert(e.j).second) return false;
  }
  return true;
}

Configuration Configuration::without_t0() const {
  std::vector<ConfigEdge> kept;
  for (const auto& e : edges_)
    if (e.type != PairType::T0) kept.push_back(e);
  return Configuration(std::move(kept), source_order_);
}

Configuration disjoint_sum(const Configuration& a, const Configuration& b) {
  std::set<Element> left;
  for (const auto& e : a.edges_) left.insert({e.i, e.j});
  for (const auto& e : b.edges_) {
    if (left.contains(e.i) || left.contains(e.j))
      throw std::invalid_argument("configurations are not disjoint");
  }
  auto edges = a.edges_;
  edges.insert(edges.end(), b.edges_.begin(), b.edges_.end());
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  std::optional<std::uint32_t> order = a.source_order_;
  if (b.source_order_) order = std::max(order.value_or(0), *b.source_order_);
  return Configuration(std::move(edges), order, true);
}

// ---------------------------------------------------------------------------
// Diagram

Diagram::Diagram(std::vector<DiagramEdge> edges) {
  if (edges.empty()) throw std::invalid_argument("diagram has no edges");
  std::vector<std::uint32_t> vertices;
  for (const auto& e : edges) {
    if (e.a >= e.b) throw std::invalid_argument("diagram edges need a < b");
    if (e.label == PairType::T0)
      throw std::invalid_argument("diagram labels range over T1..T7");
    vertices.push_back(e.a);
    vertices.push_back(e.b);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  const auto rank = [&](std::uint32_t x) {
    return static_cast<std::uint32_t>(
               std::lower_bound(vertices.begin(), vertices.end(), x) -
               vertices.begin()) +
           1;
  };
  for (auto& e : edges) {
    e.a = rank(e.a);
    e.b = rank(e.b);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t m = 1; m < edges.size(); ++m) {
    if (edges[m].a == edges[m - 1].a && edges[m].b == edges[m - 1].b)
      throw std::invalid_argument("repeated vertex pair in diagram");
  }
  v_ = static_cast<std::uint32_t>(vertices.size());
  edges_ = std::move(edges);
  c_ = CountComponents(v_, edges_);
}

std::vector<std::uint32_t> Diagram::degrees() const {
  std::vector<std::uint32_t> deg(v_ + 1, 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  deg.erase(deg.begin());
  return deg;
}

bool Diagram::is_perfect_matching() const {
  const auto deg = degrees();
  return std::all_of(deg.begin(), deg.end(), [](auto d) { return d == 1; });
}

bool Diagram::is_path() const {
  const auto deg = degrees();
  return c_ == 1 && k() + 1 == v_ &&
         std::all_of(deg.begin(), deg.end(), [](auto d) { return d <= 2; });
}

std::string Diagram::to_json() const {
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& e : edges_)
    edges.push_back({e.a, e.b, to_string(e.label)});
  nlohmann::ordered_json out;
  out["v"] = v_;
  out["edges"] = std::move(edges);
  return out.dump();
}

Diagram Diagram::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("diagram JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
    throw std::invalid_argument("diagram JSON needs an \"edges\" array");
  std::vector<DiagramEdge> edges;
  std::uint32_t max_vertex = 0;
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_unsigned() ||
        !item[1].is_number_unsigned() || !item[2].is_string())
      throw std::invalid_argument("diagram edge must be [a, b, \"Tt\"]");
    const auto a = item[0].get<std::uint32_t>();
    const auto b = item[1].get<std::uint32_t>();
    if (a == 0) throw std::invalid_argument("diagram vertices are 1-based");
    max_vertex = std::max({max_vertex, a, b});
    edges.push_back({a, b, pair_type_from_string(item[2].get<std::string>())});
  }
  Diagram diagram(std::move(edges));
  if (doc.contains("v")) {
    if (!doc["v"].is_number_unsigned() ||
        doc["v"].get<std::uint32_t>() != diagram.v() ||
        max_vertex != diagram.v())
      throw std::invalid_argument(
          "diagram \"v\" must equal the number of vertices, each of degree "
          ">= 1, numbered 1..v");
  }
  return diagram;
}

Diagram diagram_of(const Configuration& config) {
  std::vector<DiagramEdge> edges;
  edges.reserve(config.size());
  for (const auto& e : config.edges()) edges.push_back({e.i, e.j, e.type});
  return Diagram(std::move(edges));
}

Diagram canonicalize(const Diagram& diagram) {
  return Diagram(diagram.edges());
}

bool equivalent(const Diagram& x, const Diagram& y) {
  return canonicalize(x) == canonicalize(y);
}

// ---------------------------------------------------------------------------
// Constraints

std::optional<std::uint32_t> ConstraintSystem::cell_index(Cell cell) const {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
  if (it == cells_.end() || *it != cell) return std::nullopt;
  return static_cast<std::uint32_t>(it - cells_.begin());
}

bool ConstraintSystem::satisfiable() const {
  return std::none_of(neq_.begin(), neq_.end(),
                      [](const auto& p) { return p.first == p.second; });
}

ConstraintSystem compile_constraints(const Diagram& diagram) {
  ConstraintSystem sys;
  for (const auto& e : diagram.edges()) {
    sys.cells_.push_back({e.a, e.a});
    sys.cells_.push_back({e.a, e.b});
    sys.cells_.push_back({e.b, e.a});
    sys.cells_.push_back({e.b, e.b});
  }
  std::sort(sys.cells_.begin(), sys.cells_.end());
  sys.cells_.erase(std::unique(sys.cells_.begin(), sys.cells_.end()),
                   sys.cells_.end());

  UnionFind uf(sys.cells_.size());
  std::vector<std::pair<std::size_t, std::size_t>> neq_cells;
  for (const auto& e : diagram.edges()) {
    const std::array<std::size_t, 4> block = {
        *sys.cell_index({e.a, e.a}), *sys.cell_index({e.a, e.b}),
        *sys.cell_index({e.b, e.a}), *sys.cell_index({e.b, e.b})};
    const auto slots = Slots(e.label);
    std::array<std::optional<std::size_t>, 2> first;
    for (std::size_t c = 0; c < 4; ++c) {
      auto& rep = first[slots[c]];
      if (rep) {
        uf.unite(*rep, block[c]);
      } else {
        rep = block[c];
      }
    }
    if (first[0] && first[1]) neq_cells.emplace_back(*first[0], *first[1]);
  }

  std::map<std::size_t, std::uint32_t> class_id;
  for (std::size_t c = 0; c < sys.cells_.size(); ++c) {
    const auto root = uf.find(c);
    auto [it, inserted] = class_id.emplace(
        root, static_cast<std::uint32_t>(class_id.size()));
    sys.class_of_cell_.push_back(it->second);
  }
  sys.class_count_ = static_cast<std::uint32_t>(class_id.size());

  for (const auto& [x, y] : neq_cells) {
    auto cx = sys.class_of_cell_[x];
    auto cy = sys.class_of_cell_[y];
    if (cy < cx) std::swap(cx, cy);
    sys.neq_.emplace_back(cx, cy);
  }
  std::sort(sys.neq_.begin(), sys.neq_.end());
  sys.neq_.erase(std::unique(sys.neq_.begin(), sys.neq_.end()),
                 sys.neq_.end());
  return sys;
}

bool realizable(const Diagram& diagram) {
  return compile_constraints(diagram).satisfiable();
}

DiagramStats stats(const Diagram& diagram) {
  const auto sys = compile_constraints(diagram);
  return {sys.class_count(), static_cast<std::uint32_t>(sys.cells().size()),
          diagram.v(), diagram.k(), diagram.c()};
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::pair<std::uint32_t,
                      std::vector<std::pair<std::uint32_t, std::uint32_t>>>>
base_graphs(std::uint32_t k) {
  if (k == 0 || k > kMaxEnumeratedEdges)
    throw std::invalid_argument("edge count must be in 1..4");
  std::vector<std::pair<std::uint32_t,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>>>>
      out;
  for (std::uint32_t v = 2; v <= 2 * k; ++v) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    for (std::uint32_t a = 1; a <= v; ++a)
      for (std::uint32_t b = a + 1; b <= v; ++b) all.emplace_back(a, b);
    if (all.size() < k) continue;

    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<std::uint32_t> deg(v + 1, 0);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (const auto p : pick) {
        edges.push_back(all[p]);
        ++deg[all[p].first];
        ++deg[all[p].second];
      }
      if (std::all_of(deg.begin() + 1, deg.end(), [](auto d) { return d > 0; }))
        out.emplace_back(v, std::move(edges));
      if (!NextCombination(pick, all.size())) break;
    }
  }
  return out;
}

void for_each_diagram(std::uint32_t k, bool realizable_only,
                      const std::function<void(const Diagram&)>& visit) {
  for (const auto& [v, graph] : base_graphs(k)) {
    std::vector<int> labels(k, 1);
    while (true) {
      std::vector<DiagramEdge> edges;
      edges.reserve(k);
      for (std::uint32_t e = 0; e < k; ++e) {
        edges.push_back({graph[e].first, graph[e].second,
                         static_cast<PairType>(labels[e])});
      }
      Diagram diagram(std::move(edges));
      if (!realizable_only || realizable(diagram)) visit(diagram);

      if (!NextLabeling(labels)) break;
    }
  }
}

std::vector<Diagram> enumerate_diagrams(std::uint32_t k, bool realizable_only) {
  std::vector<Diagram> out;
  for_each_diagram(k, realizable_only,
                   [&](const Diagram& d) { out.push_back(d); });
  return out;
}

DiagramCensus diagram_census(std::uint32_t k) {
  DiagramCensus census;
  census.base_graphs = base_graphs(k).size();
  for_each_diagram(k, false, [&](const Diagram& d) {
    ++census.diagrams;
    if (realizable(d)) ++census.realizable;
    if (d.is_perfect_matching()) ++census.perfect_matchings;
  });
  return census;
}

// ---------------------------------------------------------------------------
// Lemma 3 relations

void check_lemma3(const Diagram& diagram,
                  std::vector<Lemma3Violation>& violations) {
  const auto st = stats(diagram);
  const bool matching = diagram.is_perfect_matching();
  const auto fail = [&](const char* relation) {
    violations.push_back({diagram, relation});
  };
  if (st.alpha > st.k + st.c) fail("alpha <= k + c");
  if (matching && st.alpha != 2 * st.k) fail("matching => alpha = 2k");
  if (st.beta != 2 * st.k + diagram.v()) fail("beta = 2k + v");
  if (st.gamma != diagram.v()) fail("gamma = v");
  if (st.c > st.k) fail("c <= k");
  if ((st.c == st.k) != matching) fail("c = k <=> perfect matching");
  if (diagram.is_path() && st.alpha != diagram.v()) fail("path => alpha = v");
}

Lemma3Report verify_lemma3(std::uint32_t k_max) {
  if (k_max == 0 || k_max > 3)
    throw std::invalid_argument("verify_lemma3 supports k_max in 1..3");
  Lemma3Report report;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    for_each_diagram(k, true, [&](const Diagram& d) {
      ++report.checked;
      if (d.is_path()) ++report.paths_checked;
      check_lemma3(d, report.violations);
    });
  }
  return report;
}

std::string Lemma3Report::to_json() const {
  nlohmann::json out;
  out["checked"] = checked;
  out["paths_checked"] = paths_checked;
  out["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    out["violations"].push_back(
        {{"diagram", nlohmann::json::parse(v.diagram.to_json())},
         {"relation", v.relation}});
  }
  return out.dump();
}

// ---------------------------------------------------------------------------
// Witnesses and extraction

OperationTable witness_groupoid(const Diagram& diagram) {
  const auto sys = compile_constraints(diagram);
  if (!sys.satisfiable())
    throw std::invalid_argument("diagram is not realizable: " +
                                diagram.to_json());
  const auto n = std::max({diagram.v(), sys.class_count(), 2u});
  std::vector<Element> entries(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t c = 0; c < sys.cells().size(); ++c) {
    const auto [row, col] = sys.cells()[c];
    entries[static_cast<std::size_t>(row - 1) * n + (col - 1)] =
        sys.class_of_cell()[c];
  }
  return OperationTable(n, 2, std::move(entries));
}

Configuration config_of_table(const OperationTable& table, bool include_t0) {
  if (table.arity() != 2)
    throw std::invalid_argument("configurations need a binary operation");
  std::vector<ConfigEdge> edges;
  for (Element i = 0; i < table.order(); ++i) {
    for (Element j = i + 1; j < table.order(); ++j) {
      const auto type = classify_pair(table, i, j);
      if (!type || (*type == PairType::T0 && !include_t0)) continue;
      edges.push_back({i, j, *type});
    }
  }
  return Configuration(std::move(edges), table.order(), include_t0);
}

}  // namespace deflab
