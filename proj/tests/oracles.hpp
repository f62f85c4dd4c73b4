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

// Brute-force oracles for tests. Nothing here calls into the code paths it is
// used to check: patterns are spelled out literally, partitions and matchings
// are enumerated directly, and tables are walked cell by cell.

#ifndef DEFLAB_TESTS_ORACLES_HPP_
#define DEFLAB_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace deflab::oracle {

// Type templates over cells (ii, ij, ji, jj), written with x = 0, y = 1.
inline constexpr std::array<std::array<int, 4>, 8> kTemplates = {{
    {0, 0, 0, 0},  // T0
    {0, 1, 1, 1},  // T1 (x y / y y)
    {1, 0, 1, 1},  // T2 (y x / y y)
    {1, 1, 0, 1},  // T3 (y y / x y)
    {1, 1, 1, 0},  // T4 (y y / y x)
    {0, 0, 1, 1},  // T5 (x x / y y)
    {0, 1, 0, 1},  // T6 (x y / x y)
    {0, 1, 1, 0},  // T7 (x y / y x)
}};

// Whether the four values fit template t for some x, y (x != y unless t = 0).
inline bool MatchesTemplate(int t, const std::array<std::uint64_t, 4>& cells) {
  std::array<std::optional<std::uint64_t>, 2> slot;
  for (int c = 0; c < 4; ++c) {
    auto& s = slot[kTemplates[t][c]];
    if (s && *s != cells[c]) return false;
    s = cells[c];
  }
  if (t == 0) return true;
  return slot[0] && slot[1] && *slot[0] != *slot[1];
}

// Every perfect matching on vertices 0..2k-1, as lists of pairs.
inline void ForEachMatching(
    std::vector<int> free_vertices, std::vector<std::pair<int, int>>& current,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  if (free_vertices.empty()) {
    visit(current);
    return;
  }
  const int first = free_vertices.front();
  for (std::size_t m = 1; m < free_vertices.size(); ++m) {
    auto rest = free_vertices;
    const int partner = rest[m];
    rest.erase(rest.begin() + static_cast<long>(m));
    rest.erase(rest.begin());
    current.emplace_back(first, partner);
    ForEachMatching(rest, current, visit);
    current.pop_back();
  }
}

inline std::uint64_t CountMatchings(int k) {
  std::vector<int> vertices(2 * k);
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<std::pair<int, int>> current;
  std::uint64_t count = 0;
  ForEachMatching(vertices, current, [&](const auto&) { ++count; });
  return count;
}

// Restricted growth strings of length `length` (all set partitions).
inline void ForEachSetPartition(
    int length, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> rgs(length, 0);
  std::function<void(int, int)> rec = [&](int pos, int max_block) {
    if (pos == length) {
      visit(rgs);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(max_block, b));
    }
  };
  if (length == 0) {
    visit(rgs);
    return;
  }
  rgs[0] = 0;
  rec(1, 0);
}

// {n brace m} by enumerating partitions.
inline std::uint64_t StirlingByEnumeration(int n, int m) {
  std::uint64_t count = 0;
  ForEachSetPartition(n, [&](const std::vector<int>& rgs) {
    const int blocks = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (blocks == m) ++count;
  });
  return count;
}

struct LabeledEdge {
  int a;  // 1-based
  int b;
  int label;  // 1..7
};

// Searches for a cell assignment realizing every edge's template. Any model
// over a large domain can be relabeled into a set partition of the
// constrained cells, so enumerating partitions is exhaustive.
inline bool HasModel(const std::vector<LabeledEdge>& edges) {
  std::map<std::pair<int, int>, int> cell_id;
  for (const auto& e : edges) {
    for (const auto& cell : {std::pair{e.a, e.a}, std::pair{e.a, e.b},
                            std::pair{e.b, e.a}, std::pair{e.b, e.b}}) {
      cell_id.emplace(cell, static_cast<int>(cell_id.size()));
    }
  }
  bool found = false;
  ForEachSetPartition(static_cast<int>(cell_id.size()),
                      [&](const std::vector<int>& value) {
    if (found) return;
    for (const auto& e : edges) {
      const std::array<std::uint64_t, 4> cells = {
          static_cast<std::uint64_t>(value[cell_id.at({e.a, e.a})]),
          static_cast<std::uint64_t>(value[cell_id.at({e.a, e.b})]),
          static_cast<std::uint64_t>(value[cell_id.at({e.b, e.a})]),
          static_cast<std::uint64_t>(value[cell_id.at({e.b, e.b})])};
      if (!MatchesTemplate(e.label, cells)) return;
    }
    found = true;
  });
  return found;
}

// Whether some bijection between the vertex sets that preserves vertex
// order also carries one labeled edge set onto the other. Vertices may use
// arbitrary labels; every bijection is tried and filtered.
inline bool OrderIsomorphic(const std::vector<LabeledEdge>& e1,
                            const std::vector<LabeledEdge>& e2) {
  std::set<int> s1;
  std::set<int> s2;
  for (const auto& e : e1) s1.insert({e.a, e.b});
  for (const auto& e : e2) s2.insert({e.a, e.b});
  if (s1.size() != s2.size() || e1.size() != e2.size()) return false;
  const std::vector<int> from(s1.begin(), s1.end());
  std::vector<int> to(s2.begin(), s2.end());
  std::set<std::tuple<int, int, int>> target;
  for (const auto& e : e2) target.emplace(std::min(e.a, e.b), std::max(e.a, e.b), e.label);
  do {
    std::map<int, int> f;
    for (std::size_t x = 0; x < from.size(); ++x) f[from[x]] = to[x];
    bool monotone = true;
    for (std::size_t x = 0; x < from.size(); ++x)
      for (std::size_t y = x + 1; y < from.size(); ++y)
        monotone &= f[from[x]] < f[from[y]];
    if (!monotone) continue;
    std::set<std::tuple<int, int, int>> mapped;
    for (const auto& e : e1) {
      const int a = f[e.a];
      const int b = f[e.b];
      mapped.emplace(std::min(a, b), std::max(a, b), e.label);
    }
    if (mapped == target) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

// Calls visit(entries) for every n x n table with entries in [0, n).
inline void ForEachBinaryTable(
    int n, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::vector<std::uint32_t> entries(static_cast<std::size_t>(n) * n, 0);
  while (true) {
    visit(entries);
    std::size_t c = 0;
    while (c < entries.size() && ++entries[c] == static_cast<std::uint32_t>(n))
      entries[c++] = 0;
    if (c == entries.size()) return;
  }
}

// Number of pairs {i < j} whose 2x2 block has at most two values.
inline int CountDeficientPairs(int n, const std::vector<std::uint32_t>& t) {
  int count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::set<std::uint32_t> values = {t[i * n + i], t[i * n + j],
                                        t[j * n + i], t[j * n + j]};
      count += values.size() <= 2;
    }
  }
  return count;
}

}  // namespace deflab::oracle

#endif  // DEFLAB_TESTS_ORACLES_HPP_
