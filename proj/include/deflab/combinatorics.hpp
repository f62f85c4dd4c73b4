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

// Exact counting functions and the closed-form probability layer. Everything
// here is exact until the final conversion to double.

#ifndef DEFLAB_COMBINATORICS_HPP_
#define DEFLAB_COMBINATORICS_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace deflab {

using ExactInteger = boost::multiprecision::cpp_int;
using Rate = boost::multiprecision::cpp_rational;

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rate& rate);
std::string to_string(const ExactInteger& value);
double to_double(const Rate& rate);

ExactInteger binomial(std::uint64_t n, std::uint64_t m);
ExactInteger stirling2(std::uint64_t n, std::uint64_t m);
// [n]_m = n (n-1) ... (n-m+1). Throws std::invalid_argument when n < m.
ExactInteger falling(std::int64_t n, std::uint64_t m);
// n (n - step) (n - 2 step) ... down to the last positive factor; step must
// be 1, 2 or 3. Nonpositive n gives the empty product.
ExactInteger multifactorial(std::int64_t n, int step);

// (2k-1)!!, the number of perfect matchings on 2k ordered vertices.
ExactInteger perfect_matching_count(std::uint64_t k);
// 7^k (2k-1)!!: classes of disjoint k-configurations (when n >= 2k).
ExactInteger disjoint_pair_class_count(std::uint64_t k);
// 7^k 2^(2k^2-k): upper bound on classes of arbitrary k-configurations.
ExactInteger nondisjoint_class_bound(std::uint64_t k);

// Classes of disjoint k-configurations of 3-element exceedance-3 sets:
//   D(0) = 1,  D(k) = 2646 (3k-1)(3k-2)/2 D(k-1).
// Equivalently 2646^k (3k)! / ((3k)!!! 2^k). The published closed form uses
// (3(k-1)) in place of (3k); only the (3k) form satisfies the recurrence and
// reproduces the series coefficient D(k)/(3k)! = 441^k/k!.
ExactInteger disjoint_triple_class_count(std::uint64_t k);
ExactInteger disjoint_triple_class_count_closed_form(std::uint64_t k);

// {2^d brace 2} / 2 for a d-ary operation, d >= 2.
Rate rate_dary(std::uint32_t arity);

struct ExceedanceRate {
  Rate rate;
  // True for s >= 4, where the rate is an extrapolation of the s = 2, 3
  // pattern rather than a derived result.
  bool conjectural = false;
};
// {s^2 brace s^2-s} / s!, s >= 2.
ExceedanceRate rate_exceedance(std::uint32_t subset_size);

// 1 - exp(-rate).
double limit_probability(const Rate& rate);
// sum_{k=1..terms} (-1)^(k+1) rate^k / k!, accumulated exactly.
Rate partial_ie_sum_exact(const Rate& rate, std::uint32_t terms);
double partial_ie_sum(const Rate& rate, std::uint32_t terms);

// Exact expected number of s-subsets X of a uniformly random d-ary operation
// of order n with |f(X, ..., X)| <= s + max_exceedance:
//   C(n, s) * sum_{i <= s + eps} {s^d brace i} [n]_i / n^(s^d).
// Throws std::invalid_argument for s < 2, s > n, d < 2, or s^d > 256.
Rate expected_count(std::uint32_t order, std::uint32_t arity = 2,
                    std::uint32_t subset_size = 2,
                    std::int64_t max_exceedance = 0);

// Expected count of T1-T7 pairs: C(n, 2) 7 (n-1) / n^3.
Rate expected_proper_pair_count(std::uint32_t order);

// Union bound 18002 [n]_5 C(n, 3) / n^9 on the probability of a 3-element
// set with exceedance at most 2 (n >= 5).
Rate exceedance2_triple_bound(std::uint32_t order);

// lim_{n -> inf} expected_count(n, d, s, eps). `diverges` is set when the
// expected count grows without bound (the limit probability is then 1).
struct LimitRate {
  Rate rate;
  bool diverges = false;
};
LimitRate asymptotic_rate(std::uint32_t arity, std::uint32_t subset_size,
                          std::int64_t max_exceedance);

}  // namespace deflab

#endif  // DEFLAB_COMBINATORICS_HPP_
