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

#include "deflab/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace deflab {
namespace {

// Largest table we are willing to materialize.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 28;

constexpr std::array<std::array<std::uint8_t, 4>, 8> kPatterns = {{
    {0, 0, 0, 0},  // T0
    {0, 1, 1, 1},  // T1
    {0, 1, 0, 0},  // T2: (y, x, y, y) in first-occurrence form
    {0, 0, 1, 0},  // T3
    {0, 0, 0, 1},  // T4
    {0, 0, 1, 1},  // T5
    {0, 1, 0, 1},  // T6
    {0, 1, 1, 0},  // T7
}};

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::uint64_t> ParseInts(std::string_view line,
                                     std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r') {
      ++pos;
      continue;
    }
    std::uint64_t value = 0;
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t' &&
                              *ptr != '\r')) {
      throw ParseError(line_no, "expected a nonnegative integer, got '" +
                                    Trim(line.substr(pos)) + "'");
    }
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

// Odometer over all s^d index tuples into a subset of size s.
bool NextTuple(std::vector<std::uint32_t>& tuple, std::uint32_t base) {
  for (std::size_t k = tuple.size(); k-- > 0;) {
    if (++tuple[k] < base) return true;
    tuple[k] = 0;
  }
  return false;
}

Element CellAt(const OperationTable& table, std::span<const Element> subset,
               const std::vector<std::uint32_t>& tuple) {
  std::size_t offset = 0;
  for (const auto t : tuple) offset = offset * table.order() + subset[t];
  return table.entries()[offset];
}

void CheckSubset(const OperationTable& table,
                 std::span<const Element> subset) {
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= table.order()) {
      throw std::out_of_range("element " + std::to_string(subset[k]) +
                              " out of range for order " +
                              std::to_string(table.order()));
    }
    if (k > 0 && subset[k] <= subset[k - 1]) {
      throw std::invalid_argument("subset must be strictly increasing");
    }
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::uint64_t CellCount(std::uint32_t order, std::uint32_t arity) {
  std::uint64_t cells = 1;
  for (std::uint32_t k = 0; k < arity; ++k) {
    if (order != 0 && cells > std::numeric_limits<std::uint64_t>::max() / order)
      throw std::overflow_error("n^d does not fit in 64 bits");
    cells *= order;
  }
  return cells;
}

OperationTable::OperationTable(std::uint32_t order, std::uint32_t arity,
                               std::vector<Element> entries)
    : order_(order), arity_(arity), entries_(std::move(entries)) {
  if (order_ == 0) throw std::invalid_argument("order must be positive");
  if (arity_ < 2) throw std::invalid_argument("arity must be at least 2");
  const auto cells = CellCount(order_, arity_);
  if (cells > kMaxCells) throw std::invalid_argument("table too large");
  if (entries_.size() != cells) {
    throw std::invalid_argument("expected " + std::to_string(cells) +
                                " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (const auto v : entries_) {
    if (v >= order_) {
      throw std::invalid_argument("entry " + std::to_string(v) +
                                  " out of range for order " +
                                  std::to_string(order_));
    }
  }
}

OperationTable OperationTable::Constant(std::uint32_t order, Element value,
                                        std::uint32_t arity) {
  return OperationTable(order, arity,
                        std::vector<Element>(CellCount(order, arity), value));
}

OperationTable OperationTable::LeftProjection(std::uint32_t order,
                                              std::uint32_t arity) {
  const auto cells = CellCount(order, arity);
  const auto stride = cells / order;
  std::vector<Element> entries(cells);
  for (std::size_t c = 0; c < cells; ++c)
    entries[c] = static_cast<Element>(c / stride);
  return OperationTable(order, arity, std::move(entries));
}

Element OperationTable::at(std::span<const Element> coords) const {
  if (coords.size() != arity_)
    throw std::invalid_argument("coordinate count does not match arity");
  std::size_t offset = 0;
  for (const auto c : coords) {
    if (c >= order_) throw std::out_of_range("coordinate out of range");
    offset = offset * order_ + c;
  }
  return entries_[offset];
}

OperationTable parse_table(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto content = Trim(text.substr(start, end - start));
    if (!content.empty() && content.front() != '#')
      lines.emplace_back(line_no, std::move(content));
    start = end + 1;
  }
  if (lines.empty()) throw ParseError(1, "missing header line");

  const auto& [header_line, header] = lines.front();
  const auto fields = ParseInts(header, header_line);
  if (fields.empty() || fields.size() > 2)
    throw ParseError(header_line, "header must be 'n' or 'n d'");
  const auto order = fields[0];
  const auto arity = fields.size() == 2 ? fields[1] : 2;
  if (order == 0 || order > std::numeric_limits<std::uint32_t>::max())
    throw ParseError(header_line, "order must be a positive integer");
  if (arity < 2 || arity > 64)
    throw ParseError(header_line, "arity must be at least 2");

  std::uint64_t cells = 0;
  try {
    cells = CellCount(static_cast<std::uint32_t>(order),
                      static_cast<std::uint32_t>(arity));
  } catch (const std::overflow_error&) {
    throw ParseError(header_line, "table too large");
  }
  if (cells > kMaxCells) throw ParseError(header_line, "table too large");
  const auto rows = cells / order;

  if (lines.size() - 1 != rows) {
    const auto where = lines.size() - 1 > rows ? lines[rows + 1].first
                                               : lines.back().first;
    throw ParseError(where, "expected " + std::to_string(rows) +
                                " rows, got " +
                                std::to_string(lines.size() - 1));
  }

  std::vector<Element> entries;
  entries.reserve(cells);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& [no, content] = lines[r];
    const auto values = ParseInts(content, no);
    if (values.size() != order) {
      throw ParseError(no, "expected " + std::to_string(order) +
                               " entries, got " +
                               std::to_string(values.size()));
    }
    for (const auto v : values) {
      if (v >= order) {
        throw ParseError(no, "entry " + std::to_string(v) +
                                 " out of range [0, " + std::to_string(order) +
                                 ")");
      }
      entries.push_back(static_cast<Element>(v));
    }
  }
  return OperationTable(static_cast<std::uint32_t>(order),
                        static_cast<std::uint32_t>(arity), std::move(entries));
}

std::string serialize_table(const OperationTable& table) {
  std::ostringstream out;
  out << table.order();
  if (table.arity() != 2) out << ' ' << table.arity();
  out << '\n';
  const auto entries = table.entries();
  for (std::size_t c = 0; c < entries.size(); ++c) {
    out << entries[c];
    out << ((c + 1) % table.order() == 0 ? '\n' : ' ');
  }
  return out.str();
}

std::array<std::uint8_t, 4> pattern(PairType type) {
  // Slot 0 is the parameter named x in the type definitions. For T2-T4 the
  // first cell carries y, so the template is the complement of the
  // first-occurrence form.
  auto p = kPatterns[index(type)];
  if (type == PairType::T2 || type == PairType::T3 || type == PairType::T4) {
    for (auto& slot : p) slot ^= 1;
  }
  return p;
}

DiagonalClass diagonal_class(PairType type) {
  const auto p = kPatterns[index(type)];
  return p[0] == p[3] ? DiagonalClass::kEqual : DiagonalClass::kUnequal;
}

std::string to_string(PairType type) { return "T" + std::to_string(index(type)); }

PairType pair_type_from_string(std::string_view text) {
  if (text.size() == 2 && (text[0] == 'T' || text[0] == 't') &&
      text[1] >= '0' && text[1] <= '7') {
    return static_cast<PairType>(text[1] - '0');
  }
  throw std::invalid_argument("unknown type '" + std::string(text) +
                              "', expected T0..T7");
}

std::optional<PairType> type_of_cells(Element ii, Element ij, Element ji,
                                      Element jj) {
  const std::array<Element, 4> cells = {ii, ij, ji, jj};
  std::array<std::uint8_t, 4> rgs{};
  std::array<Element, 2> seen{};
  std::uint8_t blocks = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    std::uint8_t b = 0;
    while (b < blocks && seen[b] != cells[c]) ++b;
    if (b == blocks) {
      if (blocks == 2) return std::nullopt;
      seen[blocks++] = cells[c];
    }
    rgs[c] = b;
  }
  for (const auto t : kAllPairTypes) {
    if (kPatterns[index(t)] == rgs) return t;
  }
  return std::nullopt;  // unreachable: all 8 two-block strings are listed
}

std::vector<std::vector<std::uint32_t>> CellSignature::blocks() const {
  std::vector<std::vector<std::uint32_t>> out(block_count);
  for (std::uint32_t c = 0; c < block_of_cell.size(); ++c)
    out[block_of_cell[c]].push_back(c);
  return out;
}

std::optional<PairType> CellSignature::as_pair_type() const {
  if (subset_size != 2 || arity != 2 || block_count > 2) return std::nullopt;
  for (const auto t : kAllPairTypes) {
    const auto& p = kPatterns[index(t)];
    if (std::equal(p.begin(), p.end(), block_of_cell.begin())) return t;
  }
  return std::nullopt;
}

ElementSet image(const OperationTable& table, std::span<const Element> subset) {
  CheckSubset(table, subset);
  std::vector<bool> hit(table.order(), false);
  std::vector<std::uint32_t> tuple(table.arity(), 0);
  const auto s = static_cast<std::uint32_t>(subset.size());
  do {
    hit[CellAt(table, subset, tuple)] = true;
  } while (NextTuple(tuple, s));
  ElementSet out;
  for (Element v = 0; v < table.order(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

std::int64_t exceedance(const OperationTable& table,
                        std::span<const Element> subset) {
  return static_cast<std::int64_t>(image(table, subset).size()) -
         static_cast<std::int64_t>(subset.size());
}

std::optional<PairType> classify_pair(const OperationTable& table, Element i,
                                      Element j) {
  if (table.arity() != 2)
    throw std::invalid_argument("classify_pair requires a binary operation");
  if (i >= j) throw std::invalid_argument("classify_pair requires i < j");
  if (j >= table.order()) throw std::out_of_range("element out of range");
  return type_of_cells(table.at(i, i), table.at(i, j), table.at(j, i),
                       table.at(j, j));
}

CellSignature cell_signature(const OperationTable& table,
                             std::span<const Element> subset) {
  CheckSubset(table, subset);
  const auto s = static_cast<std::uint32_t>(subset.size());
  if (s < 2) throw std::invalid_argument("signature needs at least 2 elements");
  CellSignature sig;
  sig.subset_size = s;
  sig.arity = table.arity();
  std::vector<Element> block_value;
  std::vector<std::uint32_t> tuple(table.arity(), 0);
  do {
    const auto v = CellAt(table, subset, tuple);
    const auto it = std::find(block_value.begin(), block_value.end(), v);
    sig.block_of_cell.push_back(
        static_cast<std::uint32_t>(it - block_value.begin()));
    if (it == block_value.end()) block_value.push_back(v);
  } while (NextTuple(tuple, s));
  sig.block_count = static_cast<std::uint32_t>(block_value.size());
  return sig;
}

void validate_query(const SubsetQuery& query, std::uint32_t order,
                    std::uint32_t arity) {
  if (query.subset_size < 2)
    throw std::invalid_argument("subset size must be at least 2");
  if (query.subset_size > order) {
    throw std::invalid_argument("subset size " +
                                std::to_string(query.subset_size) +
                                " exceeds order " + std::to_string(order));
  }
  if (query.type_filter && (query.subset_size != 2 || arity != 2)) {
    throw std::invalid_argument(
        "type filters apply only to 2-element subsets of binary operations");
  }
}

std::vector<QualifyingSubset> deficient_subsets(const OperationTable& table,
                                                const SubsetQuery& query) {
  validate_query(query, table.order(), table.arity());
  const auto n = table.order();
  const auto s = query.subset_size;
  std::vector<QualifyingSubset> out;
  ElementSet subset(s);
  for (std::uint32_t k = 0; k < s; ++k) subset[k] = k;
  while (true) {
    bool take = exceedance(table, subset) <= query.max_exceedance;
    if (take && query.type_filter)
      take = classify_pair(table, subset[0], subset[1]) == query.type_filter;
    if (take) out.push_back({subset, cell_signature(table, subset)});

    // Next combination in lexicographic order.
    std::size_t k = s;
    while (k-- > 0) {
      if (subset[k] < n - s + k) break;
      if (k == 0) return out;
    }
    ++subset[k];
    for (std::size_t m = k + 1; m < s; ++m) subset[m] = subset[m - 1] + 1;
  }
}

}  // namespace deflab
