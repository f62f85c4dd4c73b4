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

// Monte Carlo and exhaustive estimation over uniformly random operation
// tables.
//
// Sampling is counter based: the value of cell c in sample i under seed S is
// a pure function of (S, i, c), so scan order, early exit and thread count
// never change a result. The scheme, for bit-exact reimplementation:
//
//   mix64(z)  = SplitMix64 output function applied to z + 0x9e3779b97f4a7c15:
//               z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//               z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//               z ^ (z >> 31)
//   base      = mix64(mix64(S) ^ i)
//   word_0    = mix64(base ^ c)        c = row-major flat cell index
//   word_r+1  = mix64(word_r)          (only on rejection)
//   value     = high 64 bits of word * n, rejecting words whose low 64 bits
//               fall below 2^64 mod n (Lemire's bounded method, unbiased).

#ifndef DEFLAB_ESTIMATION_HPP_
#define DEFLAB_ESTIMATION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deflab/combinatorics.hpp"
#include "deflab/core.hpp"

namespace deflab {

struct TableShape {
  std::uint32_t order = 2;
  std::uint32_t arity = 2;
};

struct SamplerKey {
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t sample_base(SamplerKey key);
Element cell_value(SamplerKey key, std::uint32_t order, std::uint64_t cell);
Element cell_value(SamplerKey key, TableShape shape,
                   std::span<const Element> coords);

// The full table of sample `key`.
OperationTable materialize(TableShape shape, SamplerKey key);

// Whether sample `key` contains a qualifying subset. Cells are drawn on
// demand and the scan stops at the first hit.
bool sample_indicator(TableShape shape, const SubsetQuery& query,
                      SamplerKey key);
// Same predicate evaluated on the materialized table with the core routines.
bool sample_indicator_eager(TableShape shape, const SubsetQuery& query,
                            SamplerKey key);
// Number of qualifying subsets in sample `key` (lazy, no early exit).
std::uint64_t sample_count(TableShape shape, const SubsetQuery& query,
                           SamplerKey key);

// Worker count: DEFLAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
unsigned default_thread_count();

struct EstimateRecord {
  TableShape shape;
  SubsetQuery query;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
  double p_hat = 0;
  double std_error = 0;
  std::array<double, 2> ci95{};

  std::string to_json() const;
};

// threads = 0 selects default_thread_count().
EstimateRecord mc_probability(TableShape shape, const SubsetQuery& query,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned threads = 0);

struct CountEstimate {
  std::uint64_t samples = 0;
  std::uint64_t total = 0;
  double mean = 0;
  double std_error = 0;
};
CountEstimate mc_mean_count(TableShape shape, const SubsetQuery& query,
                            std::uint64_t samples, std::uint64_t seed,
                            unsigned threads = 0);

struct ExactResult {
  TableShape shape;
  SubsetQuery query;
  std::uint64_t tables = 0;
  std::uint64_t qualifying_tables = 0;
  std::uint64_t subset_total = 0;  // qualifying subsets summed over tables
  Rate probability;
  Rate mean_count;

  std::string to_json() const;
};

// Exhaustive over all n^(n^d) tables. Without `force` the table count must
// stay below 2^32 (binary: n <= 3).
ExactResult exact_probability(TableShape shape, const SubsetQuery& query,
                              bool force = false, unsigned threads = 0);

// Per-sample census of T1..T7 pairs in binary tables (T0 excluded).
struct TypeCensus {
  std::uint32_t order = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // histogram[m] = samples with exactly m T1..T7 pairs.
  std::vector<std::uint64_t> histogram;
  // presence[t-1] = samples with at least one pair of type t.
  std::array<std::uint64_t, 7> presence{};
  // co_presence[s-1][t-1] = samples with both types present.
  std::array<std::array<std::uint64_t, 7>, 7> co_presence{};
};
TypeCensus type_census(std::uint32_t order, std::uint64_t samples,
                       std::uint64_t seed, unsigned threads = 0);

// Total-variation distance between an empirical histogram and Poisson(lambda),
// with the Poisson tail beyond the histogram counted in full.
double poisson_tv_distance(std::span<const std::uint64_t> histogram,
                           double lambda);

struct CountHistogram {
  std::uint32_t order = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;
  Rate lambda;  // C(n,2) 7 (n-1) / n^3
  double mean = 0;
  double tv_distance = 0;

  std::string to_json() const;
};
CountHistogram count_distribution(std::uint32_t order, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 0);
CountHistogram count_distribution(const TypeCensus& census);

struct IndependenceReport {
  std::uint32_t order = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::array<double, 7> presence_rate{};
  // Pearson correlations of the indicators [X_t >= 1]. Entries involving a
  // constant indicator are 0 off the diagonal.
  std::array<std::array<double, 7>, 7> correlation{};

  std::string to_json() const;
};
IndependenceReport independence_check(std::uint32_t order,
                                      std::uint64_t samples,
                                      std::uint64_t seed,
                                      unsigned threads = 0);
IndependenceReport independence_check(const TypeCensus& census);

// Expected number of qualifying subsets for a query, honoring type filters.
Rate expected_count_for(TableShape shape, const SubsetQuery& query);
// n -> infinity limit of expected_count_for.
LimitRate limit_rate_for(std::uint32_t arity, const SubsetQuery& query);

struct SweepRow {
  EstimateRecord estimate;
  Rate lambda_n;
  double poisson_approx = 0;
  double limit = 0;

  std::string to_json() const;
};
std::vector<SweepRow> sweep(std::span<const std::uint32_t> orders,
                            std::uint32_t arity, const SubsetQuery& query,
                            std::uint64_t samples, std::uint64_t seed,
                            unsigned threads = 0);
// Header `n,p_hat,stderr,lambda_n,poisson_approx,limit`.
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace deflab

#endif  // DEFLAB_ESTIMATION_HPP_
