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

// Acceptance suite. Each criterion prints exactly one PASS or FAIL line with
// the measured values; the process exits nonzero if any criterion fails.
// Sample sizes and tolerances are fixed here and must not be tuned to make a
// run pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "deflab/combinatorics.hpp"
#include "deflab/core.hpp"
#include "deflab/diagrams.hpp"
#include "deflab/estimation.hpp"
#include "oracles.hpp"

namespace deflab {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Round4(double x) { return std::round(x * 1e4) / 1e4; }

SubsetQuery Query(std::uint32_t s, std::int64_t eps) {
  SubsetQuery q;
  q.subset_size = s;
  q.max_exceedance = eps;
  return q;
}

Outcome SeriesLimit() {
  const Rate lambda(7, 2);
  const double sum = partial_ie_sum(lambda, 40);
  const double limit = limit_probability(lambda);
  const bool ok = std::abs(sum - limit) <= 1e-12 && Round4(sum) == 0.9698 &&
                  Round4(limit) == 0.9698;
  return {ok, Format("partial=%.15f limit=%.15f", sum, limit)};
}

Outcome PerTypeLimit() {
  const double p = limit_probability(Rate(1, 2));
  return {Round4(p) == 0.3935, Format("1-exp(-1/2)=%.10f", p)};
}

Outcome StirlingAnchors() {
  ExactInteger sum = 0;
  for (int i = 1; i <= 5; ++i) sum += stirling2(9, i);
  const bool ok = stirling2(9, 6) == 2646 && sum == 18002 &&
                  stirling2(4, 2) == 7 && stirling2(8, 2) == 127;
  return {ok, "S(9,6)=" + to_string(stirling2(9, 6)) + " sum=" + to_string(sum) +
                  " S(4,2)=" + to_string(stirling2(4, 2)) +
                  " S(8,2)=" + to_string(stirling2(8, 2))};
}

Outcome CensusCounts() {
  const auto one = diagram_census(1);
  const auto two = diagram_census(2);
  const bool ok = one.diagrams == 7 && two.diagrams == 294 &&
                  two.base_graphs == 6 && two.perfect_matchings == 147 &&
                  ExactInteger(two.perfect_matchings) == disjoint_pair_class_count(2);
  return {ok, Format("k=1:%llu k=2:%llu base=%llu matchings=%llu",
                     static_cast<unsigned long long>(one.diagrams),
                     static_cast<unsigned long long>(two.diagrams),
                     static_cast<unsigned long long>(two.base_graphs),
                     static_cast<unsigned long long>(two.perfect_matchings))};
}

Outcome Lemma3Suite() {
  const auto report = verify_lemma3(3);
  return {report.violations.empty() && report.checked > 0 && report.paths_checked > 0,
          Format("checked=%llu paths=%llu violations=%zu",
                 static_cast<unsigned long long>(report.checked),
                 static_cast<unsigned long long>(report.paths_checked),
                 report.violations.size())};
}

std::vector<oracle::LabeledEdge> ToOracle(const Diagram& d) {
  std::vector<oracle::LabeledEdge> out;
  for (const auto& e : d.edges())
    out.push_back({static_cast<int>(e.a), static_cast<int>(e.b), index(e.label)});
  return out;
}

Outcome RealizabilityOracle() {
  std::size_t disagreements = 0;
  std::size_t small = 0;
  for (std::uint32_t k = 1; k <= 2; ++k) {
    for (const auto& d : enumerate_diagrams(k, false)) {
      disagreements += realizable(d) != oracle::HasModel(ToOracle(d));
      ++small;
    }
  }
  int unrealizable = 0;
  for (auto a : kProperPairTypes) {
    for (auto b : kProperPairTypes) {
      for (auto c : kProperPairTypes) {
        const Diagram tri({{1, 2, a}, {2, 3, b}, {1, 3, c}});
        const bool decided = realizable(tri);
        disagreements += decided != oracle::HasModel(ToOracle(tri));
        unrealizable += !decided;
      }
    }
  }
  return {disagreements == 0 && unrealizable == 108,
          Format("small=%zu triangles=343 disagreements=%zu unrealizable=%d",
                 small, disagreements, unrealizable)};
}

Outcome ExhaustiveGroundTruth() {
  const auto two = exact_probability({2, 2}, Query(2, 0));
  const auto three = exact_probability({3, 2}, Query(2, 0));
  std::size_t lemma_failures = 0;
  std::size_t configs = 0;
  oracle::ForEachBinaryTable(3, [&](const std::vector<std::uint32_t>& e) {
    const auto cfg = config_of_table(
        OperationTable(3, 2, std::vector<Element>(e.begin(), e.end())));
    if (cfg.empty()) return;
    ++configs;
    const auto d = diagram_of(cfg);
    std::vector<Lemma3Violation> violations;
    check_lemma3(d, violations);
    lemma_failures += !violations.empty() || !realizable(d);
  });
  const bool ok = two.qualifying_tables == 16 && two.tables == 16 &&
                  two.probability == 1 && three.tables == 19683 &&
                  three.mean_count == Rate(5, 3) && lemma_failures == 0;
  return {ok, "n=2 p=" + to_string(two.probability) +
                  " n=3 mean=" + to_string(three.mean_count) +
                  Format(" configs=%zu lemma_failures=%zu", configs, lemma_failures)};
}

Outcome McVersusOracle() {
  const double exact = to_double(exact_probability({3, 2}, Query(2, 0)).probability);
  const auto rec = mc_probability({3, 2}, Query(2, 0), 100000, 2024);
  const double gap = std::abs(rec.p_hat - exact);
  return {gap <= 4 * rec.std_error,
          Format("p_hat=%.5f exact=%.5f |diff|=%.5f 4se=%.5f", rec.p_hat, exact,
                 gap, 4 * rec.std_error)};
}

Outcome Convergence() {
  const std::uint32_t orders[] = {30, 100, 300};
  const auto rows = sweep(orders, 2, Query(2, 0), 20000, 909);
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const double gap = std::abs(r.estimate.p_hat - r.poisson_approx);
    const double budget = 0.01 + 3 * r.estimate.std_error;
    ok &= gap <= budget;
    detail += Format("n=%u p_hat=%.4f approx=%.4f gap=%.4f<=%.4f; ",
                     r.estimate.shape.order, r.estimate.p_hat, r.poisson_approx,
                     gap, budget);
  }
  const double last = std::abs(rows.back().estimate.p_hat - 0.9698);
  ok &= last <= 0.012;
  detail += Format("|p_hat(300)-0.9698|=%.4f<=0.012", last);
  return {ok, detail};
}

Outcome PerType() {
  const auto census = type_census(300, 20000, 1010);
  bool ok = true;
  std::string detail;
  for (int t = 0; t < 7; ++t) {
    const double p = static_cast<double>(census.presence[t]) / census.samples;
    ok &= std::abs(p - 0.3935) <= 0.015;
    detail += Format("T%d=%.4f ", t + 1, p);
  }
  return {ok, detail + "(target 0.3935 +/- 0.015)"};
}

Outcome PoissonShape() {
  const auto hist = count_distribution(200, 50000, 1111);
  return {hist.tv_distance <= 0.05,
          Format("TV=%.4f lambda=%.4f mean=%.4f", hist.tv_distance,
                 to_double(hist.lambda), hist.mean)};
}

Outcome Independence() {
  const auto report = independence_check(300, 50000, 1212);
  const double budget = 4 / std::sqrt(50000.0) + 0.01;
  double worst = 0;
  for (int s = 0; s < 7; ++s)
    for (int t = 0; t < 7; ++t)
      if (s != t) worst = std::max(worst, std::abs(report.correlation[s][t]));
  return {worst <= budget, Format("max|rho|=%.4f budget=%.4f", worst, budget)};
}

Outcome TripleVanishing() {
  const auto rec = mc_probability({100, 2}, Query(3, 0), 10000, 1313);
  return {rec.p_hat <= 0.005, Format("p_hat=%.5f hits=%llu", rec.p_hat,
                                     static_cast<unsigned long long>(rec.hits))};
}

Outcome ExceedanceSaturation() {
  const auto rec = mc_probability({50, 2}, Query(3, 3), 1000, 1414);
  return {rec.p_hat >= 0.99, Format("p_hat=%.4f", rec.p_hat)};
}

Outcome TripleCounts() {
  bool ok = disjoint_triple_class_count(0) == 1;
  ExactInteger factorial = 1;
  ExactInteger k_factorial = 1;
  ExactInteger power = 1;
  for (std::uint64_t k = 1; k <= 6; ++k) {
    for (std::uint64_t f = 3 * k - 2; f <= 3 * k; ++f) factorial *= f;
    k_factorial *= k;
    power *= 441;
    const auto d = disjoint_triple_class_count(k);
    ok &= d == disjoint_triple_class_count(k - 1) * 2646 * (3 * k - 1) * (3 * k - 2) / 2;
    ok &= Rate(d, factorial) == Rate(power, k_factorial);
  }
  return {ok, "D(1)=" + to_string(disjoint_triple_class_count(1)) +
                  " D(2)=" + to_string(disjoint_triple_class_count(2))};
}

Outcome Determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"mc", "--n", "60", "--samples", "4000", "--seed", "77"},
      {"mc", "--n", "20", "--s", "3", "--eps", "1", "--samples", "1000", "--seed", "5"},
      {"sweep", "--n-list", "10,40", "--samples", "3000", "--seed", "78", "--format", "csv"},
      {"sweep", "--n-list", "12", "--samples", "2000", "--seed", "79", "--type", "T6"}};
  std::size_t mismatches = 0;
  std::size_t runs = 0;
  for (const auto& base : commands) {
    std::string reference;
    for (const char* threads : {"", "1", "2", "3", "7"}) {
      auto args = base;
      if (*threads) args.insert(args.end(), {"--threads", threads});
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run(args, out, err);
      ++runs;
      if (code != cli::kExitOk) {
        ++mismatches;
        continue;
      }
      if (reference.empty()) {
        reference = out.str();
      } else {
        mismatches += out.str() != reference;
      }
    }
  }
  return {mismatches == 0, Format("runs=%zu mismatches=%zu", runs, mismatches)};
}

}  // namespace
}  // namespace deflab

int main() {
  using deflab::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"series-limit", deflab::SeriesLimit},
      {"per-type-limit", deflab::PerTypeLimit},
      {"stirling-anchors", deflab::StirlingAnchors},
      {"diagram-census", deflab::CensusCounts},
      {"lemma3-suite", deflab::Lemma3Suite},
      {"realizability-oracle", deflab::RealizabilityOracle},
      {"exhaustive-ground-truth", deflab::ExhaustiveGroundTruth},
      {"mc-vs-oracle", deflab::McVersusOracle},
      {"convergence", deflab::Convergence},
      {"per-type", deflab::PerType},
      {"poisson-shape", deflab::PoissonShape},
      {"independence", deflab::Independence},
      {"triple-vanishing", deflab::TripleVanishing},
      {"exceedance3-saturation", deflab::ExceedanceSaturation},
      {"triple-class-counts", deflab::TripleCounts},
      {"determinism", deflab::Determinism},
  };
  int failures = 0;
  int number = 0;
  for (const auto& [name, check] : criteria) {
    ++number;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !outcome.pass;
    std::printf("%s %02d %s: %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", number,
                name, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", number - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
