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

// Configurations of deficient pairs and their diagrams.
//
// A configuration is a set of typed 2-element subsets of one groupoid. Its
// diagram is the labeled graph on the (totally ordered) elements involved,
// one edge per subset. Because the vertices are totally ordered, two diagrams
// are equivalent exactly when their order-preserving compressions to 1..v
// coincide, so the compressed form is the canonical form.

#ifndef DEFLAB_DIAGRAMS_HPP_
#define DEFLAB_DIAGRAMS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deflab/core.hpp"

namespace deflab {

struct ConfigEdge {
  Element i = 0;
  Element j = 0;
  PairType type = PairType::T1;

  friend bool operator==(const ConfigEdge&, const ConfigEdge&) = default;
};

class Configuration {
 public:
  // Validates i < j, distinct vertex pairs, and T1..T7 labels unless
  // allow_t0 is set.
  explicit Configuration(std::vector<ConfigEdge> edges,
                         std::optional<std::uint32_t> source_order = {},
                         bool allow_t0 = false);

  const std::vector<ConfigEdge>& edges() const { return edges_; }
  std::optional<std::uint32_t> source_order() const { return source_order_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // No two edges share an element.
  bool is_disjoint() const;
  // The same configuration without T0 edges.
  Configuration without_t0() const;

  // C + C' when the two are element-disjoint; throws std::invalid_argument
  // otherwise.
  friend Configuration disjoint_sum(const Configuration& a,
                                    const Configuration& b);

 private:
  std::vector<ConfigEdge> edges_;
  std::optional<std::uint32_t> source_order_;
};

struct DiagramEdge {
  std::uint32_t a = 0;  // 1-based, a < b
  std::uint32_t b = 0;
  PairType label = PairType::T1;

  friend auto operator<=>(const DiagramEdge&, const DiagramEdge&) = default;
};

class Diagram {
 public:
  // Builds the canonical form: vertices are compressed order-preservingly to
  // 1..v and edges sorted. Throws std::invalid_argument on an empty edge list,
  // a self loop, a repeated vertex pair, or a T0 label.
  explicit Diagram(std::vector<DiagramEdge> edges);

  std::uint32_t v() const { return v_; }
  std::uint32_t k() const { return static_cast<std::uint32_t>(edges_.size()); }
  // Connected components of the underlying graph.
  std::uint32_t c() const { return c_; }
  const std::vector<DiagramEdge>& edges() const { return edges_; }

  std::vector<std::uint32_t> degrees() const;
  bool is_perfect_matching() const;
  // Connected, max degree 2, and k = v - 1.
  bool is_path() const;

  std::string to_json() const;
  static Diagram from_json(const std::string& text);

  friend bool operator==(const Diagram&, const Diagram&) = default;
  friend auto operator<=>(const Diagram& x, const Diagram& y) {
    if (auto cmp = x.v_ <=> y.v_; cmp != 0) return cmp;
    return x.edges_ <=> y.edges_;
  }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t c_ = 0;
  std::vector<DiagramEdge> edges_;
};

Diagram diagram_of(const Configuration& config);
Diagram canonicalize(const Diagram& diagram);
bool equivalent(const Diagram& x, const Diagram& y);

// Equality classes over the constrained Cayley cells of a diagram plus one
// disequality per edge (its x slot against its y slot).
class ConstraintSystem {
 public:
  using Cell = std::pair<std::uint32_t, std::uint32_t>;  // (row, col), 1-based

  const std::vector<Cell>& cells() const { return cells_; }
  // Class id of each cell after closure, numbered by first appearance in
  // cells() order.
  const std::vector<std::uint32_t>& class_of_cell() const {
    return class_of_cell_;
  }
  std::uint32_t class_count() const { return class_count_; }
  // Class pairs that must differ.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& disequalities()
      const {
    return neq_;
  }
  std::optional<std::uint32_t> cell_index(Cell cell) const;
  bool satisfiable() const;

 private:
  friend ConstraintSystem compile_constraints(const Diagram& diagram);

  std::vector<Cell> cells_;  // sorted row-major
  std::vector<std::uint32_t> class_of_cell_;
  std::uint32_t class_count_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> neq_;
};

ConstraintSystem compile_constraints(const Diagram& diagram);
bool realizable(const Diagram& diagram);

struct DiagramStats {
  std::uint32_t alpha = 0;  // free parameters of the partial table
  std::uint32_t beta = 0;   // constrained cells
  std::uint32_t gamma = 0;  // elements
  std::uint32_t k = 0;
  std::uint32_t c = 0;
};

DiagramStats stats(const Diagram& diagram);

inline constexpr std::uint32_t kMaxEnumeratedEdges = 4;

// Visits every canonical diagram with exactly k edges in deterministic order:
// by vertex count, then edge set (lexicographic), then labels (T1 < ... < T7
// on edges in order). Throws std::invalid_argument for k = 0 or k > 4.
void for_each_diagram(std::uint32_t k, bool realizable_only,
                      const std::function<void(const Diagram&)>& visit);
std::vector<Diagram> enumerate_diagrams(std::uint32_t k, bool realizable_only);

// Unlabeled edge sets underlying the k-edge diagrams, as (v, edges) pairs.
std::vector<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t,
                                                           std::uint32_t>>>>
base_graphs(std::uint32_t k);

struct DiagramCensus {
  std::uint64_t diagrams = 0;
  std::uint64_t realizable = 0;
  std::uint64_t perfect_matchings = 0;
  std::uint64_t base_graphs = 0;
};
DiagramCensus diagram_census(std::uint32_t k);

struct Lemma3Violation {
  Diagram diagram;
  std::string relation;
};

struct Lemma3Report {
  std::uint64_t checked = 0;
  std::uint64_t paths_checked = 0;
  std::vector<Lemma3Violation> violations;

  std::string to_json() const;
};

// Checks the parameter/cell/element relations over one diagram and appends
// any failures to `violations`.
void check_lemma3(const Diagram& diagram,
                  std::vector<Lemma3Violation>& violations);
// Runs check_lemma3 over every realizable diagram with 1..k_max edges
// (k_max <= 3).
Lemma3Report verify_lemma3(std::uint32_t k_max);

// A table of order max(v, alpha, 2) in which vertex a is element a-1 and every
// edge of the diagram is a deficient pair of its labeled type. Cells outside
// the diagram are 0. Throws std::invalid_argument for unrealizable diagrams.
OperationTable witness_groupoid(const Diagram& diagram);

// Every deficient pair of a binary table with its type; T0 pairs only when
// include_t0 is set.
Configuration config_of_table(const OperationTable& table,
                              bool include_t0 = false);

}  // namespace deflab

#endif  // DEFLAB_DIAGRAMS_HPP_
