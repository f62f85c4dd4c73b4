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

#include "deflab/estimation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "oracles.hpp"

namespace deflab {
namespace {

SubsetQuery Query(std::uint32_t s, std::int64_t eps,
                  std::optional<PairType> type = {}) {
  SubsetQuery q;
  q.subset_size = s;
  q.max_exceedance = eps;
  q.type_filter = type;
  return q;
}

TEST(Sampler, MixMatchesSplitMixReference) {
  // First outputs of the SplitMix64 generator started from state 0.
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(sample_base({3, 9}), mix64(mix64(3) ^ 9));
}

TEST(Sampler, DeterministicAndInRange) {
  const SamplerKey key{42, 7};
  for (std::uint64_t cell = 0; cell < 200; ++cell) {
    const auto v = cell_value(key, 13, cell);
    EXPECT_EQ(v, cell_value(key, 13, cell));
    EXPECT_LT(v, 13u);
    EXPECT_EQ(cell_value(key, 1, cell), 0u);
  }
  const Element coords[] = {2, 5};
  EXPECT_EQ(cell_value(key, TableShape{13, 2}, coords), cell_value(key, 13, 31));
  const auto t = materialize({13, 2}, key);
  EXPECT_EQ(t.at(2, 5), cell_value(key, 13, 31));
}

TEST(Sampler, UniformAtOrderTen) {
  std::array<std::uint64_t, 10> freq{};
  constexpr std::uint64_t kDraws = 1000000;
  for (std::uint64_t i = 0; i < kDraws; ++i)
    ++freq[cell_value({1, i / 100}, 10, i % 100)];
  const double sigma = std::sqrt(kDraws * 0.1 * 0.9);
  double chi2 = 0;
  for (auto f : freq) {
    EXPECT_LE(std::abs(static_cast<double>(f) - 1e5), 5 * sigma);
    chi2 += (f - 1e5) * (f - 1e5) / 1e5;
  }
  // 9 degrees of freedom; 27.9 is the 0.999 quantile.
  EXPECT_LT(chi2, 27.9);
}

TEST(Indicator, Preconditions) {
  EXPECT_THROW(sample_indicator({1, 2}, Query(2, 0), {0, 0}), std::invalid_argument);
  EXPECT_THROW(sample_indicator({3, 2}, Query(4, 0), {0, 0}), std::invalid_argument);
  for (std::uint64_t i = 0; i < 50; ++i)
    EXPECT_TRUE(sample_indicator({2, 2}, Query(2, 0), {5, i}));
}

TEST(Indicator, LazyEqualsEager) {
  std::mt19937_64 rng(2024);
  const std::vector<SubsetQuery> queries = {
      Query(2, 0), Query(2, -1), Query(2, 1), Query(2, 0, PairType::T0),
      Query(2, 0, PairType::T3), Query(2, 0, PairType::T6), Query(3, 0),
      Query(3, 1), Query(3, -1), Query(4, 0)};
  int hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 2 + rng() % 5;
    const std::uint32_t d = trial % 4 == 0 ? 3 : 2;
    auto q = queries[rng() % queries.size()];
    if (q.subset_size > n || (d == 3 && q.type_filter)) q = Query(2, 0);
    const SamplerKey key{rng(), rng()};
    const bool lazy = sample_indicator({n, d}, q, key);
    ASSERT_EQ(lazy, sample_indicator_eager({n, d}, q, key))
        << "n=" << n << " d=" << d << " s=" << q.subset_size;
    ASSERT_EQ(sample_count({n, d}, q, key),
              deficient_subsets(materialize({n, d}, key), q).size());
    hits += lazy;
  }
  EXPECT_GT(hits, 100);
  EXPECT_LT(hits, 1000);
}

TEST(Estimate, ThreadCountDoesNotChangeResults) {
  const auto one = mc_probability({40, 2}, Query(2, 0), 3000, 9, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = mc_probability({40, 2}, Query(2, 0), 3000, 9, threads);
    EXPECT_EQ(one.hits, many.hits);
    EXPECT_EQ(one.to_json(), many.to_json());
  }
  EXPECT_EQ(type_census(20, 500, 3, 1).co_presence,
            type_census(20, 500, 3, 4).co_presence);
}

TEST(Estimate, RecordFields) {
  const auto rec = mc_probability({2, 2}, Query(2, 0), 100, 1);
  EXPECT_EQ(rec.hits, 100u);
  EXPECT_EQ(rec.p_hat, 1.0);
  EXPECT_EQ(rec.std_error, 0.0);
  const auto doc = nlohmann::json::parse(rec.to_json());
  for (const char* key : {"n", "d", "s", "eps", "samples", "seed", "hits",
                          "p_hat", "stderr", "ci95"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_THROW(mc_probability({3, 2}, Query(2, 0), 0, 1), std::invalid_argument);
}

TEST(Exact, SmallOrdersAgainstOracle) {
  const auto two = exact_probability({2, 2}, Query(2, 0));
  EXPECT_EQ(two.tables, 16u);
  EXPECT_EQ(two.probability, Rate(1));
  EXPECT_EQ(two.mean_count, Rate(1));

  std::uint64_t qualifying = 0;
  std::uint64_t pairs = 0;
  oracle::ForEachBinaryTable(3, [&](const std::vector<std::uint32_t>& e) {
    const int c = oracle::CountDeficientPairs(3, e);
    qualifying += c > 0;
    pairs += c;
  });
  const auto three = exact_probability({3, 2}, Query(2, 0));
  EXPECT_EQ(three.tables, 19683u);
  EXPECT_EQ(three.qualifying_tables, qualifying);
  EXPECT_EQ(three.subset_total, pairs);
  EXPECT_EQ(three.probability, Rate(667, 729));
  EXPECT_EQ(three.mean_count, Rate(5, 3));

  EXPECT_THROW(exact_probability({4, 2}, Query(2, 0)), std::invalid_argument);
}

TEST(Exact, ProperTypesAtOrderTwo) {
  int with_proper = 0;
  oracle::ForEachBinaryTable(2, [&](const std::vector<std::uint32_t>& e) {
    with_proper += !(e[0] == e[1] && e[1] == e[2] && e[2] == e[3]);
  });
  EXPECT_EQ(with_proper, 14);
  std::uint64_t proper = 0;
  for (auto t : kProperPairTypes)
    proper += exact_probability({2, 2}, Query(2, 0, t)).qualifying_tables;
  EXPECT_EQ(proper, 14u);
  EXPECT_EQ(exact_probability({3, 2}, Query(3, 0)).probability, Rate(1));
}

TEST(Estimate, OrderThreeWithinFourSigmaOfExact) {
  for (const auto& q : {Query(2, 0), Query(3, 0), Query(3, 3), Query(2, 0, PairType::T4)}) {
    const double exact = to_double(exact_probability({3, 2}, q).probability);
    const auto rec = mc_probability({3, 2}, q, 100000, 17);
    const double sigma = std::sqrt(exact * (1 - exact) / rec.samples);
    EXPECT_LE(std::abs(rec.p_hat - exact), 4 * sigma + 1e-12)
        << "s=" << q.subset_size << " eps=" << q.max_exceedance;
  }
}

TEST(Estimate, MeanCountsMatchExpectations) {
  const auto three = mc_mean_count({3, 2}, Query(2, 0), 100000, 5);
  EXPECT_LE(std::abs(three.mean - 5.0 / 3.0), 4 * three.std_error);

  const auto cube = mc_mean_count({30, 3}, Query(2, 0), 20000, 8);
  const double expected = to_double(expected_count(30, 3));
  EXPECT_LE(std::abs(cube.mean - expected), 3 * cube.std_error)
      << cube.mean << " vs " << expected;
}

TEST(Estimate, TripleDeficiencyVanishes) {
  const auto rec = mc_probability({100, 2}, Query(3, 0), 2000, 4);
  EXPECT_LE(rec.p_hat, 0.005);
  const auto eps2 = mc_probability({60, 2}, Query(3, 2), 2000, 4);
  const double bound = to_double(exceedance2_triple_bound(60));
  EXPECT_LE(eps2.p_hat, bound + 3 * eps2.std_error + 1e-12);
}

TEST(Census, HistogramsAndCorrelations) {
  const auto census = type_census(12, 4000, 21);
  const auto hist = count_distribution(census);
  EXPECT_EQ(std::accumulate(hist.counts.begin(), hist.counts.end(), std::uint64_t{0}),
            4000u);
  EXPECT_EQ(hist.lambda, expected_proper_pair_count(12));
  const auto indep = independence_check(census);
  for (int s = 0; s < 7; ++s) {
    EXPECT_DOUBLE_EQ(indep.correlation[s][s], 1.0);
    for (int t = 0; t < 7; ++t)
      EXPECT_DOUBLE_EQ(indep.correlation[s][t], indep.correlation[t][s]);
  }
  // Same seed through the convenience overload gives the same report.
  EXPECT_EQ(independence_check(12, 4000, 21).to_json(), indep.to_json());
}

TEST(Census, OrderTwoMean) {
  const auto hist = count_distribution(2, 16000, 2);
  ASSERT_LE(hist.counts.size(), 2u);
  EXPECT_NEAR(hist.mean, 14.0 / 16.0, 4 * std::sqrt(14.0 * 2 / 256 / 16000));
  EXPECT_EQ(hist.lambda, Rate(7, 8));
}

TEST(Census, PoissonDistanceOfExactPoissonIsSmall) {
  std::vector<std::uint64_t> hist;
  double p = std::exp(-2.0);
  for (int m = 0; m < 30; ++m) {
    hist.push_back(static_cast<std::uint64_t>(std::llround(p * 1e9)));
    p *= 2.0 / (m + 1);
  }
  EXPECT_LT(poisson_tv_distance(hist, 2.0), 1e-6);
  EXPECT_NEAR(poisson_tv_distance(std::vector<std::uint64_t>{0, 0, 0, 0, 0, 0, 1}, 0.001),
              1.0, 1e-6);
}

TEST(Sweep, OrderTwoRow) {
  const std::uint32_t orders[] = {2};
  const auto rows = sweep(orders, 2, Query(2, 0), 500, 0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].estimate.p_hat, 1.0);
  EXPECT_EQ(rows[0].lambda_n, Rate(1));
  EXPECT_NEAR(rows[0].poisson_approx, 1 - std::exp(-1.0), 1e-12);
  EXPECT_NEAR(rows[0].limit, 0.9698026165776815, 1e-12);
  const auto csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,p_hat,stderr,lambda_n,poisson_approx,limit");
  EXPECT_EQ(csv, sweep_csv(sweep(orders, 2, Query(2, 0), 500, 0)));
}

TEST(Theory, ExpectedCountsForQueries) {
  EXPECT_EQ(expected_count_for({3, 2}, Query(2, 0)), Rate(5, 3));
  EXPECT_EQ(expected_count_for({3, 2}, Query(2, 0, PairType::T0)), Rate(3, 27));
  EXPECT_EQ(expected_count_for({3, 2}, Query(2, 0, PairType::T5)), Rate(6, 27));
  EXPECT_EQ(limit_rate_for(2, Query(2, 0, PairType::T5)).rate, Rate(1, 2));
  EXPECT_EQ(limit_rate_for(2, Query(2, 0, PairType::T0)).rate, Rate(0));
}

}  // namespace
}  // namespace deflab
