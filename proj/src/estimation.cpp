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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace deflab {
namespace {

constexpr std::uint64_t kExactTableLimit = std::uint64_t{1} << 32;

inline Element Draw(std::uint64_t base, std::uint64_t cell,
                    std::uint32_t order) {
  std::uint64_t word = mix64(base ^ cell);
  while (true) {
    const auto product = static_cast<unsigned __int128>(word) * order;
    const auto low = static_cast<std::uint64_t>(product);
    if (low >= order || low >= (0 - std::uint64_t{order}) % order)
      return static_cast<Element>(product >> 64);
    word = mix64(word);
  }
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// Splits [0, count) into contiguous ranges, runs `work(begin, end)` for each
// on its own thread and returns the partial results in range order.
template <class Work>
auto RunChunks(std::uint64_t count, unsigned threads, Work work)
    -> std::vector<decltype(work(std::uint64_t{}, std::uint64_t{}))> {
  using Partial = decltype(work(std::uint64_t{}, std::uint64_t{}));
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(count, 1, std::max(threads, 1u)));
  std::vector<Partial> partials(threads);
  if (threads == 1) {
    partials[0] = work(0, count);
    return partials;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const auto begin = count * t / threads;
    const auto end = count * (t + 1) / threads;
    pool.emplace_back([&partials, &work, t, begin, end] {
      partials[t] = work(begin, end);
    });
  }
  pool.clear();  // joins
  return partials;
}

std::uint64_t Power(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t out = 1;
  for (std::uint32_t k = 0; k < exp; ++k) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("power does not fit in 64 bits");
    out *= base;
  }
  return out;
}

// Depth-first scan over s-subsets in lexicographic order, drawing only the
// cells needed. Images only grow as elements are added, so a prefix whose
// image already exceeds s + eps values is pruned. `on_hit` returns true to
// stop the scan. Returns true when stopped early.
template <class Cells, class OnHit>
class SubsetScanner {
 public:
  SubsetScanner(TableShape shape, const SubsetQuery& query, Cells& cells,
                OnHit& on_hit)
      : shape_(shape), query_(query), cells_(cells), on_hit_(on_hit) {
    const auto s = query.subset_size;
    bound_ = static_cast<std::int64_t>(s) + query.max_exceedance;
    chosen_.resize(s);
    values_.resize(s + 1);
    strides_.resize(shape.arity);
    for (std::uint32_t k = 0; k < shape.arity; ++k)
      strides_[k] = Power(shape.order, shape.arity - 1 - k);
    // tuples_[m] lists the index tuples over {0..m} that use index m.
    tuples_.resize(s);
    for (std::uint32_t m = 0; m < s; ++m) {
      std::vector<std::uint32_t> tuple(shape.arity, 0);
      while (true) {
        if (std::find(tuple.begin(), tuple.end(), m) != tuple.end())
          tuples_[m].push_back(tuple);
        std::size_t k = shape.arity;
        while (k-- > 0) {
          if (++tuple[k] <= m) break;
          tuple[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
  }

  bool Run() {
    if (bound_ < 1) return false;
    return Extend(0, 0);
  }

 private:
  bool Extend(std::uint32_t depth, Element first) {
    const auto s = query_.subset_size;
    if (depth == s) {
      if (query_.type_filter && TypeOfChosen() != query_.type_filter)
        return false;
      return on_hit_(chosen_);
    }
    const auto last = shape_.order - (s - depth);
    for (Element e = first; e <= last; ++e) {
      chosen_[depth] = e;
      auto& vals = values_[depth + 1];
      vals = values_[depth];
      bool pruned = false;
      for (const auto& tuple : tuples_[depth]) {
        std::uint64_t flat = 0;
        for (std::uint32_t k = 0; k < shape_.arity; ++k)
          flat += chosen_[tuple[k]] * strides_[k];
        const auto v = cells_(flat);
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) {
          vals.push_back(v);
          if (static_cast<std::int64_t>(vals.size()) > bound_) {
            pruned = true;
            break;
          }
        }
      }
      if (!pruned && Extend(depth + 1, e + 1)) return true;
    }
    return false;
  }

  std::optional<PairType> TypeOfChosen() {
    const auto n = shape_.order;
    const std::uint64_t i = chosen_[0];
    const std::uint64_t j = chosen_[1];
    return type_of_cells(cells_(i * n + i), cells_(i * n + j),
                         cells_(j * n + i), cells_(j * n + j));
  }

  TableShape shape_;
  const SubsetQuery& query_;
  Cells& cells_;
  OnHit& on_hit_;
  std::int64_t bound_ = 0;
  std::vector<Element> chosen_;
  std::vector<std::vector<Element>> values_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::vector<std::vector<std::uint32_t>>> tuples_;
};

template <class Cells, class OnHit>
bool ScanSubsets(TableShape shape, const SubsetQuery& query, Cells& cells,
                 OnHit on_hit) {
  SubsetScanner<Cells, OnHit> scanner(shape, query, cells, on_hit);
  return scanner.Run();
}

// Binary tables, pairs with at most two distinct values. Diagonal cells are
// drawn first; the off-diagonal cell ji is drawn only when ii, ij, jj leave
// room for a deficient pair. `visit(type)` returns true to stop.
class PairScanner {
 public:
  explicit PairScanner(std::uint32_t order) : order_(order), diag_(order) {}

  template <class Visit>
  bool Scan(std::uint64_t base, Visit&& visit) {
    const std::uint64_t n = order_;
    for (std::uint64_t i = 0; i < n; ++i) diag_[i] = Draw(base, i * n + i, order_);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto a = diag_[i];
      for (std::uint64_t j = i + 1; j < n; ++j) {
        const auto b = diag_[j];
        const auto u = Draw(base, i * n + j, order_);
        if (a != b && u != a && u != b) continue;
        const auto w = Draw(base, j * n + i, order_);
        const auto type = type_of_cells(a, u, w, b);
        if (type && visit(*type)) return true;
      }
    }
    return false;
  }

 private:
  std::uint32_t order_;
  std::vector<Element> diag_;
};

bool UsesPairFastPath(TableShape shape, const SubsetQuery& query) {
  return shape.arity == 2 && query.subset_size == 2 &&
         query.max_exceedance == 0;
}

struct LazyCells {
  std::uint64_t base;
  std::uint32_t order;
  Element operator()(std::uint64_t flat) const {
    return Draw(base, flat, order);
  }
};

struct TableCells {
  const Element* entries;
  Element operator()(std::uint64_t flat) const { return entries[flat]; }
};

void CheckShape(TableShape shape) {
  if (shape.order == 0) throw std::invalid_argument("order must be positive");
  if (shape.arity < 2) throw std::invalid_argument("arity must be at least 2");
}

nlohmann::json QueryJson(TableShape shape, const SubsetQuery& query) {
  nlohmann::json out;
  out["n"] = shape.order;
  out["d"] = shape.arity;
  out["s"] = query.subset_size;
  out["eps"] = query.max_exceedance;
  if (query.type_filter) out["type"] = to_string(*query.type_filter);
  return out;
}

nlohmann::json EstimateJson(const EstimateRecord& r) {
  auto out = QueryJson(r.shape, r.query);
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  out["hits"] = r.hits;
  out["p_hat"] = r.p_hat;
  out["stderr"] = r.std_error;
  out["ci95"] = {r.ci95[0], r.ci95[1]};
  return out;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t sample_base(SamplerKey key) {
  return mix64(mix64(key.seed) ^ key.sample_index);
}

Element cell_value(SamplerKey key, std::uint32_t order, std::uint64_t cell) {
  if (order == 0) throw std::invalid_argument("order must be positive");
  return Draw(sample_base(key), cell, order);
}

Element cell_value(SamplerKey key, TableShape shape,
                   std::span<const Element> coords) {
  CheckShape(shape);
  if (coords.size() != shape.arity)
    throw std::invalid_argument("coordinate count does not match arity");
  std::uint64_t flat = 0;
  for (const auto c : coords) {
    if (c >= shape.order) throw std::out_of_range("coordinate out of range");
    flat = flat * shape.order + c;
  }
  return cell_value(key, shape.order, flat);
}

OperationTable materialize(TableShape shape, SamplerKey key) {
  CheckShape(shape);
  const auto cells = CellCount(shape.order, shape.arity);
  const auto base = sample_base(key);
  std::vector<Element> entries(cells);
  for (std::uint64_t c = 0; c < cells; ++c)
    entries[c] = Draw(base, c, shape.order);
  return OperationTable(shape.order, shape.arity, std::move(entries));
}

bool sample_indicator(TableShape shape, const SubsetQuery& query,
                      SamplerKey key) {
  CheckShape(shape);
  validate_query(query, shape.order, shape.arity);
  const auto base = sample_base(key);
  if (UsesPairFastPath(shape, query)) {
    PairScanner scanner(shape.order);
    return scanner.Scan(base, [&](PairType t) {
      return !query.type_filter || t == *query.type_filter;
    });
  }
  LazyCells cells{base, shape.order};
  return ScanSubsets(shape, query, cells,
                     [](const std::vector<Element>&) { return true; });
}

bool sample_indicator_eager(TableShape shape, const SubsetQuery& query,
                            SamplerKey key) {
  return !deficient_subsets(materialize(shape, key), query).empty();
}

std::uint64_t sample_count(TableShape shape, const SubsetQuery& query,
                           SamplerKey key) {
  CheckShape(shape);
  validate_query(query, shape.order, shape.arity);
  const auto base = sample_base(key);
  std::uint64_t count = 0;
  if (UsesPairFastPath(shape, query)) {
    PairScanner scanner(shape.order);
    scanner.Scan(base, [&](PairType t) {
      if (!query.type_filter || t == *query.type_filter) ++count;
      return false;
    });
    return count;
  }
  LazyCells cells{base, shape.order};
  ScanSubsets(shape, query, cells, [&](const std::vector<Element>&) {
    ++count;
    return false;
  });
  return count;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("DEFLAB_THREADS")) {
    unsigned value = 0;
    const auto* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string EstimateRecord::to_json() const { return EstimateJson(*this).dump(); }

EstimateRecord mc_probability(TableShape shape, const SubsetQuery& query,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned threads) {
  CheckShape(shape);
  validate_query(query, shape.order, shape.arity);
  if (samples == 0) throw std::invalid_argument("samples must be positive");

  const auto partials =
      RunChunks(samples, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        if (UsesPairFastPath(shape, query)) {
          PairScanner scanner(shape.order);
          for (auto i = begin; i < end; ++i) {
            hits += scanner.Scan(sample_base({seed, i}), [&](PairType t) {
              return !query.type_filter || t == *query.type_filter;
            });
          }
        } else {
          for (auto i = begin; i < end; ++i) {
            LazyCells cells{sample_base({seed, i}), shape.order};
            hits += ScanSubsets(shape, query, cells,
                                [](const std::vector<Element>&) { return true; });
          }
        }
        return hits;
      });

  EstimateRecord record;
  record.shape = shape;
  record.query = query;
  record.samples = samples;
  record.seed = seed;
  for (const auto h : partials) record.hits += h;
  const double n = static_cast<double>(samples);
  record.p_hat = static_cast<double>(record.hits) / n;
  record.std_error = std::sqrt(record.p_hat * (1.0 - record.p_hat) / n);
  record.ci95 = {record.p_hat - 1.96 * record.std_error,
                 record.p_hat + 1.96 * record.std_error};
  return record;
}

CountEstimate mc_mean_count(TableShape shape, const SubsetQuery& query,
                            std::uint64_t samples, std::uint64_t seed,
                            unsigned threads) {
  CheckShape(shape);
  validate_query(query, shape.order, shape.arity);
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  struct Sums {
    std::uint64_t total = 0;
    double squares = 0;
  };
  const auto partials =
      RunChunks(samples, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Sums sums;
        for (auto i = begin; i < end; ++i) {
          const auto c = sample_count(shape, query, {seed, i});
          sums.total += c;
          sums.squares += static_cast<double>(c) * static_cast<double>(c);
        }
        return sums;
      });
  CountEstimate out;
  out.samples = samples;
  double squares = 0;
  for (const auto& p : partials) {
    out.total += p.total;
    squares += p.squares;
  }
  const double n = static_cast<double>(samples);
  out.mean = static_cast<double>(out.total) / n;
  const double var = std::max(0.0, squares / n - out.mean * out.mean);
  out.std_error = std::sqrt(var / n);
  return out;
}

std::string ExactResult::to_json() const {
  auto out = QueryJson(shape, query);
  out["tables"] = tables;
  out["qualifying_tables"] = qualifying_tables;
  out["probability"] = to_string(probability);
  out["p"] = to_double(probability);
  out["subset_total"] = subset_total;
  out["mean_count"] = to_string(mean_count);
  out["mean"] = to_double(mean_count);
  return out.dump();
}

ExactResult exact_probability(TableShape shape, const SubsetQuery& query,
                              bool force, unsigned threads) {
  CheckShape(shape);
  validate_query(query, shape.order, shape.arity);
  const auto cells = CellCount(shape.order, shape.arity);
  if (cells > 64) throw std::invalid_argument("table too large to enumerate");
  std::uint64_t tables = 0;
  try {
    tables = Power(shape.order, static_cast<std::uint32_t>(cells));
  } catch (const std::overflow_error&) {
    throw std::invalid_argument("table count exceeds 2^64");
  }
  if (tables >= kExactTableLimit && !force) {
    throw std::invalid_argument(
        "exhaustive enumeration of " + std::to_string(tables) +
        " tables exceeds the default guard; pass --force to run it");
  }

  struct Tally {
    std::uint64_t qualifying = 0;
    std::uint64_t subsets = 0;
  };
  const auto partials =
      RunChunks(tables, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Tally tally;
        if (begin == end) return tally;
        // Table t has entry c equal to digit c of t in base n.
        std::vector<Element> entries(cells, 0);
        auto rest = begin;
        for (std::uint64_t c = 0; c < cells; ++c) {
          entries[c] = static_cast<Element>(rest % shape.order);
          rest /= shape.order;
        }
        TableCells view{entries.data()};
        for (auto t = begin; t < end; ++t) {
          std::uint64_t count = 0;
          ScanSubsets(shape, query, view, [&](const std::vector<Element>&) {
            ++count;
            return false;
          });
          tally.subsets += count;
          tally.qualifying += count > 0;
          for (std::uint64_t c = 0; c < cells; ++c) {
            if (++entries[c] < shape.order) break;
            entries[c] = 0;
          }
        }
        return tally;
      });

  ExactResult out;
  out.shape = shape;
  out.query = query;
  out.tables = tables;
  for (const auto& p : partials) {
    out.qualifying_tables += p.qualifying;
    out.subset_total += p.subsets;
  }
  out.probability = Rate(ExactInteger(out.qualifying_tables), ExactInteger(tables));
  out.mean_count = Rate(ExactInteger(out.subset_total), ExactInteger(tables));
  return out;
}

TypeCensus type_census(std::uint32_t order, std::uint64_t samples,
                       std::uint64_t seed, unsigned threads) {
  if (order < 2) throw std::invalid_argument("type census needs n >= 2");
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  const auto partials =
      RunChunks(samples, threads, [&](std::uint64_t begin, std::uint64_t end) {
        TypeCensus part;
        PairScanner scanner(order);
        for (auto i = begin; i < end; ++i) {
          std::uint64_t count = 0;
          unsigned present = 0;
          scanner.Scan(sample_base({seed, i}), [&](PairType t) {
            if (t != PairType::T0) {
              ++count;
              present |= 1u << (index(t) - 1);
            }
            return false;
          });
          if (part.histogram.size() <= count) part.histogram.resize(count + 1, 0);
          ++part.histogram[count];
          for (int s = 0; s < 7; ++s) {
            if (!(present >> s & 1u)) continue;
            ++part.presence[s];
            for (int t = 0; t < 7; ++t)
              if (present >> t & 1u) ++part.co_presence[s][t];
          }
        }
        return part;
      });
  TypeCensus out;
  out.order = order;
  out.samples = samples;
  out.seed = seed;
  for (const auto& p : partials) {
    if (out.histogram.size() < p.histogram.size())
      out.histogram.resize(p.histogram.size(), 0);
    for (std::size_t m = 0; m < p.histogram.size(); ++m)
      out.histogram[m] += p.histogram[m];
    for (int s = 0; s < 7; ++s) {
      out.presence[s] += p.presence[s];
      for (int t = 0; t < 7; ++t) out.co_presence[s][t] += p.co_presence[s][t];
    }
  }
  return out;
}

double poisson_tv_distance(std::span<const std::uint64_t> histogram,
                           double lambda) {
  std::uint64_t samples = 0;
  for (const auto c : histogram) samples += c;
  if (samples == 0) throw std::invalid_argument("empty histogram");
  double pmf = std::exp(-lambda);
  double covered = 0;
  double distance = 0;
  for (std::size_t m = 0; m < histogram.size(); ++m) {
    distance += std::abs(static_cast<double>(histogram[m]) /
                             static_cast<double>(samples) -
                         pmf);
    covered += pmf;
    pmf *= lambda / static_cast<double>(m + 1);
  }
  distance += std::max(0.0, 1.0 - covered);
  return distance / 2;
}

CountHistogram count_distribution(const TypeCensus& census) {
  CountHistogram out;
  out.order = census.order;
  out.samples = census.samples;
  out.seed = census.seed;
  out.counts = census.histogram;
  out.lambda = expected_proper_pair_count(census.order);
  double total = 0;
  for (std::size_t m = 0; m < out.counts.size(); ++m)
    total += static_cast<double>(m) * static_cast<double>(out.counts[m]);
  out.mean = total / static_cast<double>(census.samples);
  out.tv_distance = poisson_tv_distance(out.counts, to_double(out.lambda));
  return out;
}

CountHistogram count_distribution(std::uint32_t order, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads) {
  return count_distribution(type_census(order, samples, seed, threads));
}

std::string CountHistogram::to_json() const {
  nlohmann::json out;
  out["n"] = order;
  out["samples"] = samples;
  out["seed"] = seed;
  out["counts"] = counts;
  out["mean"] = mean;
  out["lambda_n"] = to_string(lambda);
  out["lambda_n_real"] = to_double(lambda);
  out["tv_distance"] = tv_distance;
  return out.dump();
}

IndependenceReport independence_check(const TypeCensus& census) {
  IndependenceReport out;
  out.order = census.order;
  out.samples = census.samples;
  out.seed = census.seed;
  const double n = static_cast<double>(census.samples);
  for (int t = 0; t < 7; ++t)
    out.presence_rate[t] = static_cast<double>(census.presence[t]) / n;
  for (int s = 0; s < 7; ++s) {
    for (int t = 0; t < 7; ++t) {
      if (s == t) {
        out.correlation[s][t] = 1.0;
        continue;
      }
      const double ps = out.presence_rate[s];
      const double pt = out.presence_rate[t];
      const double var = ps * (1 - ps) * pt * (1 - pt);
      const double joint = static_cast<double>(census.co_presence[s][t]) / n;
      out.correlation[s][t] = var > 0 ? (joint - ps * pt) / std::sqrt(var) : 0.0;
    }
  }
  return out;
}

IndependenceReport independence_check(std::uint32_t order,
                                      std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads) {
  return independence_check(type_census(order, samples, seed, threads));
}

std::string IndependenceReport::to_json() const {
  nlohmann::json out;
  out["n"] = order;
  out["samples"] = samples;
  out["seed"] = seed;
  out["presence_rate"] = presence_rate;
  out["correlation"] = correlation;
  return out.dump();
}

Rate expected_count_for(TableShape shape, const SubsetQuery& query) {
  if (query.type_filter) {
    if (shape.arity != 2 || query.subset_size != 2)
      throw std::invalid_argument("type filters need s = 2 and d = 2");
    if (shape.order < 2) throw std::invalid_argument("order must be >= 2");
    const auto n = shape.order;
    const ExactInteger per_pair = *query.type_filter == PairType::T0 ? 1 : n - 1;
    return Rate(binomial(n, 2) * per_pair, ExactInteger(n) * n * n);
  }
  return expected_count(shape.order, shape.arity, query.subset_size,
                        query.max_exceedance);
}

LimitRate limit_rate_for(std::uint32_t arity, const SubsetQuery& query) {
  if (query.type_filter) {
    if (*query.type_filter == PairType::T0) return {0, false};
    return {Rate(1, 2), false};
  }
  return asymptotic_rate(arity, query.subset_size, query.max_exceedance);
}

std::string SweepRow::to_json() const {
  auto out = EstimateJson(estimate);
  out["lambda_n"] = to_string(lambda_n);
  out["lambda_n_real"] = to_double(lambda_n);
  out["poisson_approx"] = poisson_approx;
  out["limit"] = limit;
  return out.dump();
}

std::vector<SweepRow> sweep(std::span<const std::uint32_t> orders,
                            std::uint32_t arity, const SubsetQuery& query,
                            std::uint64_t samples, std::uint64_t seed,
                            unsigned threads) {
  for (const auto n : orders) validate_query(query, n, arity);
  const auto limit_rate = limit_rate_for(arity, query);
  const double limit =
      limit_rate.diverges ? 1.0 : limit_probability(limit_rate.rate);
  std::vector<SweepRow> rows;
  for (const auto n : orders) {
    SweepRow row;
    row.estimate = mc_probability({n, arity}, query, samples, seed, threads);
    row.lambda_n = expected_count_for({n, arity}, query);
    row.poisson_approx = limit_probability(row.lambda_n);
    row.limit = limit;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "n,p_hat,stderr,lambda_n,poisson_approx,limit\n";
  for (const auto& r : rows) {
    out << r.estimate.shape.order << ',' << FormatDouble(r.estimate.p_hat)
        << ',' << FormatDouble(r.estimate.std_error) << ','
        << FormatDouble(to_double(r.lambda_n)) << ','
        << FormatDouble(r.poisson_approx) << ',' << FormatDouble(r.limit)
        << '\n';
  }
  return out.str();
}

}  // namespace deflab
