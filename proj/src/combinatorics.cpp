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

#include "deflab/combinatorics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace deflab {
namespace {

namespace mp = boost::multiprecision;

constexpr std::uint64_t kMaxExpectedCountCells = 256;
constexpr std::uint32_t kMaxDaryArity = 16;

ExactInteger Pow(std::uint64_t base, std::uint64_t exp) {
  return mp::pow(ExactInteger(base), static_cast<unsigned>(exp));
}

// Row {cells brace i} for i = 0..cells.
std::vector<ExactInteger> StirlingRow(std::uint64_t cells) {
  std::vector<ExactInteger> row(cells + 1, 0);
  row[0] = 1;
  for (std::uint64_t r = 1; r <= cells; ++r) {
    for (std::uint64_t m = r; m >= 1; --m) row[m] = m * row[m] + row[m - 1];
    row[0] = 0;
  }
  return row;
}

}  // namespace

std::string to_string(const ExactInteger& value) { return value.str(); }

std::string to_string(const Rate& rate) {
  const auto num = mp::numerator(rate);
  const auto den = mp::denominator(rate);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rate& rate) { return rate.convert_to<double>(); }

ExactInteger binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  if (m > n - m) m = n - m;
  ExactInteger result = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    result *= n - m + i;
    result /= i;  // exact: product of i consecutive integers
  }
  return result;
}

ExactInteger stirling2(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  if (n == 0) return 1;
  if (m == 0) return 0;
  // S(n, m) = m S(n-1, m) + S(n-1, m-1), one row at a time up to column m.
  std::vector<ExactInteger> row(m + 1, 0);
  row[0] = 1;
  for (std::uint64_t r = 1; r <= n; ++r) {
    const auto top = std::min<std::uint64_t>(r, m);
    for (std::uint64_t c = top; c >= 1; --c) row[c] = c * row[c] + row[c - 1];
    row[0] = 0;
  }
  return row[m];
}

ExactInteger falling(std::int64_t n, std::uint64_t m) {
  if (n < 0 || static_cast<std::uint64_t>(n) < m) {
    throw std::invalid_argument("falling factorial requires n >= m");
  }
  ExactInteger result = 1;
  for (std::uint64_t i = 0; i < m; ++i) result *= static_cast<std::uint64_t>(n) - i;
  return result;
}

ExactInteger multifactorial(std::int64_t n, int step) {
  if (step < 1 || step > 3)
    throw std::invalid_argument("multifactorial step must be 1, 2 or 3");
  ExactInteger result = 1;
  for (std::int64_t f = n; f > 0; f -= step) result *= f;
  return result;
}

ExactInteger perfect_matching_count(std::uint64_t k) {
  return multifactorial(2 * static_cast<std::int64_t>(k) - 1, 2);
}

ExactInteger disjoint_pair_class_count(std::uint64_t k) {
  return Pow(7, k) * perfect_matching_count(k);
}

ExactInteger nondisjoint_class_bound(std::uint64_t k) {
  return Pow(7, k) * Pow(2, 2 * k * k - k);
}

ExactInteger disjoint_triple_class_count(std::uint64_t k) {
  ExactInteger d = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    d *= ExactInteger(2646) * ((3 * j - 1) * (3 * j - 2));
    d /= 2;  // (3j-1)(3j-2) is a product of consecutive integers
  }
  return d;
}

ExactInteger disjoint_triple_class_count_closed_form(std::uint64_t k) {
  const auto three_k = static_cast<std::int64_t>(3 * k);
  return Pow(2646, k) * multifactorial(three_k, 1) /
         (multifactorial(three_k, 3) * Pow(2, k));
}

Rate rate_dary(std::uint32_t arity) {
  if (arity < 2) throw std::invalid_argument("rate_dary requires d >= 2");
  if (arity > kMaxDaryArity)
    throw std::invalid_argument("rate_dary supports d <= 16");
  // {m brace 2} = 2^(m-1) - 1 with m = 2^d cells.
  const std::uint64_t cells = std::uint64_t{1} << arity;
  return Rate(Pow(2, cells - 1) - 1, 2);
}

ExceedanceRate rate_exceedance(std::uint32_t subset_size) {
  if (subset_size < 2)
    throw std::invalid_argument("rate_exceedance requires s >= 2");
  if (subset_size > 16)
    throw std::invalid_argument("rate_exceedance supports s <= 16");
  const std::uint64_t cells = std::uint64_t{subset_size} * subset_size;
  return {Rate(stirling2(cells, cells - subset_size),
               multifactorial(subset_size, 1)),
          subset_size >= 4};
}

double limit_probability(const Rate& rate) {
  if (rate < 0) throw std::invalid_argument("rate must be nonnegative");
  return -std::expm1(-to_double(rate));
}

Rate partial_ie_sum_exact(const Rate& rate, std::uint32_t terms) {
  if (terms < 1) throw std::invalid_argument("partial sum needs K >= 1");
  Rate sum = 0;
  Rate term = 1;
  for (std::uint32_t k = 1; k <= terms; ++k) {
    term *= rate;
    term /= k;
    if (k % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

double partial_ie_sum(const Rate& rate, std::uint32_t terms) {
  return to_double(partial_ie_sum_exact(rate, terms));
}

Rate expected_count(std::uint32_t order, std::uint32_t arity,
                    std::uint32_t subset_size, std::int64_t max_exceedance) {
  if (arity < 2) throw std::invalid_argument("arity must be at least 2");
  if (subset_size < 2)
    throw std::invalid_argument("subset size must be at least 2");
  if (subset_size > order)
    throw std::invalid_argument("subset size exceeds order");
  std::uint64_t cells = 1;
  for (std::uint32_t k = 0; k < arity; ++k) {
    cells *= subset_size;
    if (cells > kMaxExpectedCountCells)
      throw std::invalid_argument("unsupported combination: s^d > 256");
  }
  const std::int64_t max_values = static_cast<std::int64_t>(subset_size) +
                                  max_exceedance;
  const auto top = static_cast<std::uint64_t>(std::min<std::int64_t>(
      {max_values, static_cast<std::int64_t>(cells),
       static_cast<std::int64_t>(order)}));
  if (max_values < 1) return 0;

  const auto row = StirlingRow(cells);
  ExactInteger assignments = 0;
  for (std::uint64_t i = 1; i <= top; ++i)
    assignments += row[i] * falling(order, i);
  return Rate(binomial(order, subset_size) * assignments, Pow(order, cells));
}

Rate expected_proper_pair_count(std::uint32_t order) {
  if (order < 2) throw std::invalid_argument("order must be at least 2");
  return Rate(binomial(order, 2) * 7 * (order - 1), Pow(order, 3));
}

Rate exceedance2_triple_bound(std::uint32_t order) {
  if (order < 5) throw std::invalid_argument("bound requires n >= 5");
  return Rate(18002 * falling(order, 5) * binomial(order, 3), Pow(order, 9));
}

LimitRate asymptotic_rate(std::uint32_t arity, std::uint32_t subset_size,
                          std::int64_t max_exceedance) {
  if (arity < 2 || subset_size < 2)
    throw std::invalid_argument("asymptotic_rate requires d >= 2 and s >= 2");
  std::uint64_t cells = 1;
  for (std::uint32_t k = 0; k < arity; ++k) {
    cells *= subset_size;
    if (cells > kMaxExpectedCountCells)
      throw std::invalid_argument("unsupported combination: s^d > 256");
  }
  const std::int64_t max_values = std::min<std::int64_t>(
      static_cast<std::int64_t>(subset_size) + max_exceedance,
      static_cast<std::int64_t>(cells));
  if (max_values < 1) return {0, false};
  // C(n, s) {cells brace m} [n]_m / n^cells ~ {cells brace m}/s! n^(s+m-cells)
  const std::int64_t power = static_cast<std::int64_t>(subset_size) +
                             max_values - static_cast<std::int64_t>(cells);
  if (power < 0) return {0, false};
  if (power > 0) return {0, true};
  return {Rate(stirling2(cells, static_cast<std::uint64_t>(max_values)),
               multifactorial(subset_size, 1)),
          false};
}

}  // namespace deflab
