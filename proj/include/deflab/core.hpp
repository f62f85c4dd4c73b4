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

#ifndef DEFLAB_CORE_HPP_
#define DEFLAB_CORE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deflab {

using Element = std::uint32_t;

// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

// Raised by parse_table; carries the 1-based line of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A finite operation f : [n]^d -> [n] stored as a dense row-major table.
// entry(i_1, ..., i_d) lives at sum_k i_k * n^(d-k).
class OperationTable {
 public:
  OperationTable(std::uint32_t order, std::uint32_t arity,
                 std::vector<Element> entries);

  // Table whose every entry is `value`.
  static OperationTable Constant(std::uint32_t order, Element value,
                                 std::uint32_t arity = 2);
  // x . y = x (generalizes to f(x_1, ..., x_d) = x_1).
  static OperationTable LeftProjection(std::uint32_t order,
                                       std::uint32_t arity = 2);

  std::uint32_t order() const { return order_; }
  std::uint32_t arity() const { return arity_; }
  std::span<const Element> entries() const { return entries_; }

  Element at(std::span<const Element> coords) const;
  Element at(Element row, Element col) const {
    return entries_[static_cast<std::size_t>(row) * order_ + col];
  }

  // Number of cells, n^d.
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const OperationTable&, const OperationTable&) =
      default;

 private:
  std::uint32_t order_;
  std::uint32_t arity_;
  std::vector<Element> entries_;
};

// n^d with an overflow check; throws std::overflow_error when it does not fit
// in 64 bits.
std::uint64_t CellCount(std::uint32_t order, std::uint32_t arity);

OperationTable parse_table(std::string_view text);
std::string serialize_table(const OperationTable& table);

// Types of a 2-element subset {i < j} of a groupoid, keyed by the value
// pattern of the cells (ii, ij, ji, jj).
enum class PairType : std::uint8_t { T0, T1, T2, T3, T4, T5, T6, T7 };

inline constexpr std::array<PairType, 8> kAllPairTypes = {
    PairType::T0, PairType::T1, PairType::T2, PairType::T3,
    PairType::T4, PairType::T5, PairType::T6, PairType::T7};
inline constexpr std::array<PairType, 7> kProperPairTypes = {
    PairType::T1, PairType::T2, PairType::T3, PairType::T4,
    PairType::T5, PairType::T6, PairType::T7};

enum class DiagonalClass { kEqual, kUnequal };

// Slot template over {x = 0, y = 1} for the cells (ii, ij, ji, jj).
std::array<std::uint8_t, 4> pattern(PairType type);
// Whether cells ii and jj carry the same parameter. T0 counts as equal.
DiagonalClass diagonal_class(PairType type);

std::string to_string(PairType type);
// Accepts "T0".."T7"; throws std::invalid_argument otherwise.
PairType pair_type_from_string(std::string_view text);

inline int index(PairType type) { return static_cast<int>(type); }

// Type of the 2x2 block with cells (ii, ij, ji, jj), or nullopt when the
// block holds three or more distinct values.
std::optional<PairType> type_of_cells(Element ii, Element ij, Element ji,
                                      Element jj);

// Canonical set-partition of the s^d cells of a subset's sub-table. Cells are
// enumerated row-major over the sorted subset; block ids follow first
// occurrence (restricted growth string).
struct CellSignature {
  std::uint32_t subset_size = 0;
  std::uint32_t arity = 0;
  std::vector<std::uint32_t> block_of_cell;
  std::uint32_t block_count = 0;

  std::vector<std::vector<std::uint32_t>> blocks() const;
  // For s = 2, d = 2 signatures, the matching type (if any).
  std::optional<PairType> as_pair_type() const;

  friend bool operator==(const CellSignature&, const CellSignature&) = default;
};

struct SubsetQuery {
  std::uint32_t subset_size = 2;
  // Deficiency is max_exceedance = 0.
  std::int64_t max_exceedance = 0;
  // Only for s = 2, d = 2.
  std::optional<PairType> type_filter;
};

struct QualifyingSubset {
  ElementSet subset;
  CellSignature signature;
};

ElementSet image(const OperationTable& table, std::span<const Element> subset);
std::int64_t exceedance(const OperationTable& table,
                        std::span<const Element> subset);
std::optional<PairType> classify_pair(const OperationTable& table, Element i,
                                      Element j);
CellSignature cell_signature(const OperationTable& table,
                             std::span<const Element> subset);

// Throws std::invalid_argument when the query cannot apply to a table of the
// given shape (s < 2, s > n, type filter outside s = d = 2).
void validate_query(const SubsetQuery& query, std::uint32_t order,
                    std::uint32_t arity);

// All s-subsets whose exceedance is at most query.max_exceedance (and whose
// type matches the filter, if any), in lexicographic order.
std::vector<QualifyingSubset> deficient_subsets(const OperationTable& table,
                                                const SubsetQuery& query);

}  // namespace deflab

#endif  // DEFLAB_CORE_HPP_
