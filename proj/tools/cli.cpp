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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "deflab/combinatorics.hpp"
#include "deflab/core.hpp"
#include "deflab/diagrams.hpp"
#include "deflab/estimation.hpp"

namespace deflab::cli {
namespace {

using nlohmann::json;

struct CommandConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  std::string format = "json";
  unsigned threads = 0;
  bool include_t0 = false;
  bool force = false;
};

struct QueryOptions {
  std::uint32_t order = 0;
  std::uint32_t arity = 2;
  std::uint32_t subset_size = 2;
  std::int64_t max_exceedance = 0;
  std::string type;

  SubsetQuery query() const {
    SubsetQuery q;
    q.subset_size = subset_size;
    q.max_exceedance = max_exceedance;
    if (!type.empty()) q.type_filter = pair_type_from_string(type);
    return q;
  }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void AddCommon(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Random seed (default 0)");
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", cfg.threads,
                  "Worker threads (default: DEFLAB_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--include-t0", cfg.include_t0, "Report T0 pairs as well");
  sub->add_flag("--force", cfg.force, "Allow n = 4 exhaustive enumeration");
}

void AddQuery(CLI::App* sub, QueryOptions& q, bool with_order) {
  if (with_order) sub->add_option("--n", q.order, "Order n")->required();
  sub->add_option("--d", q.arity, "Arity d (default 2)");
  sub->add_option("--s", q.subset_size, "Subset size s (default 2)");
  sub->add_option("--eps", q.max_exceedance,
                  "Maximum exceedance (default 0: deficient)");
  sub->add_option("--type", q.type, "Restrict to one type T0..T7");
}

void RequireJson(const CommandConfig& cfg, const std::string& command) {
  if (cfg.format != "json")
    throw UsageError("--format csv is not supported by '" + command + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

// ---------------------------------------------------------------------------

int Classify(const std::string& path, const QueryOptions& opts,
             const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  RequireJson(cfg, "classify");
  const std::string text = ReadFile(path);
  OperationTable table = [&] {
    try {
      return parse_table(text);
    } catch (const ParseError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }();
  auto query = opts.query();
  const bool pairs = table.arity() == 2 && query.subset_size == 2;

  json subsets = json::array();
  for (const auto& item : deficient_subsets(table, query)) {
    const auto type = item.signature.as_pair_type();
    if (pairs && type == PairType::T0 && !cfg.include_t0 &&
        query.type_filter != PairType::T0)
      continue;
    json entry;
    entry["subset"] = item.subset;
    entry["exceedance"] = exceedance(table, item.subset);
    if (pairs && type) entry["type"] = to_string(*type);
    entry["signature"] = item.signature.blocks();
    subsets.push_back(std::move(entry));
  }

  json doc;
  doc["n"] = table.order();
  doc["d"] = table.arity();
  doc["s"] = query.subset_size;
  doc["eps"] = query.max_exceedance;
  doc["subsets"] = subsets;
  doc["diagram"] = nullptr;
  if (table.arity() == 2) {
    const auto config = config_of_table(table);
    if (!config.empty())
      doc["diagram"] = json::parse(diagram_of(config).to_json());
  }
  out << doc.dump() << '\n';
  err << path << ": " << subsets.size() << " qualifying subset(s)\n";
  return kExitOk;
}

json TheoryRecord(const std::string& quantity, const Rate& rate,
                  bool conjectural) {
  json rec;
  rec["quantity"] = quantity;
  rec["exact"] = to_string(rate);
  rec["expression"] = "1-exp(-" + to_string(rate) + ")";
  rec["real"] = limit_probability(rate);
  rec["complement"] = std::exp(-to_double(rate));
  rec["conjectural"] = conjectural;
  return rec;
}

int Theory(const std::string& kind, const QueryOptions& opts,
           std::uint32_t terms, std::uint32_t edges, bool have_d, bool have_s,
           const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  RequireJson(cfg, "theory");
  std::vector<json> records;
  if (kind == "pair2") {
    records.push_back(TheoryRecord("pair2_limit", rate_dary(2), false));
  } else if (kind == "per-type") {
    records.push_back(TheoryRecord("per_type_limit", Rate(1, 2), false));
  } else if (kind == "dary") {
    records.push_back(TheoryRecord("dary_limit", rate_dary(opts.arity), false));
  } else if (kind == "exceedance") {
    const auto r = rate_exceedance(opts.subset_size);
    records.push_back(TheoryRecord("exceedance_limit", r.rate, r.conjectural));
  } else if (kind == "partial-sum") {
    Rate rate = rate_dary(2);
    bool conjectural = false;
    if (have_s) {
      const auto r = rate_exceedance(opts.subset_size);
      rate = r.rate;
      conjectural = r.conjectural;
    } else if (have_d) {
      rate = rate_dary(opts.arity);
    }
    const auto sum = partial_ie_sum_exact(rate, terms);
    json rec;
    rec["quantity"] = "partial_ie_sum";
    rec["rate"] = to_string(rate);
    rec["K"] = terms;
    rec["exact"] = to_string(sum);
    rec["real"] = to_double(sum);
    rec["limit"] = limit_probability(rate);
    rec["conjectural"] = conjectural;
    records.push_back(std::move(rec));
  } else if (kind == "expected-count") {
    if (opts.order == 0) throw UsageError("expected-count needs --n");
    const auto count = expected_count(opts.order, opts.arity,
                                      opts.subset_size, opts.max_exceedance);
    json rec;
    rec["quantity"] = "expected_count";
    rec["n"] = opts.order;
    rec["d"] = opts.arity;
    rec["s"] = opts.subset_size;
    rec["eps"] = opts.max_exceedance;
    rec["exact"] = to_string(count);
    rec["real"] = to_double(count);
    rec["conjectural"] = false;
    records.push_back(std::move(rec));
  } else if (kind == "class-counts") {
    const auto add = [&](const char* name, const ExactInteger& value) {
      json rec;
      rec["quantity"] = name;
      rec["k"] = edges;
      rec["exact"] = to_string(value);
      rec["real"] = value.convert_to<double>();
      rec["conjectural"] = false;
      records.push_back(std::move(rec));
    };
    add("perfect_matching_count", perfect_matching_count(edges));
    add("disjoint_pair_class_count", disjoint_pair_class_count(edges));
    add("nondisjoint_class_bound", nondisjoint_class_bound(edges));
    add("disjoint_triple_class_count", disjoint_triple_class_count(edges));
  }
  for (const auto& rec : records) {
    out << rec.dump() << '\n';
    err << rec["quantity"].get<std::string>() << ": ";
    if (rec.contains("expression")) {
      err << rec["expression"].get<std::string>() << " = ";
    }
    err << Fixed(rec["real"].get<double>(), 10) << '\n';
  }
  return kExitOk;
}

int Exact(const QueryOptions& opts, const CommandConfig& cfg, std::ostream& out,
          std::ostream& err) {
  RequireJson(cfg, "exact");
  const auto result = exact_probability({opts.order, opts.arity}, opts.query(),
                                        cfg.force, cfg.threads);
  out << result.to_json() << '\n';
  err << "exact: p = " << to_string(result.probability) << " ("
      << Fixed(to_double(result.probability), 10) << "), mean count "
      << to_string(result.mean_count) << '\n';
  return kExitOk;
}

int MonteCarlo(const QueryOptions& opts, const CommandConfig& cfg,
               std::ostream& out, std::ostream& err) {
  const auto rec = mc_probability({opts.order, opts.arity}, opts.query(),
                                  cfg.samples, cfg.seed, cfg.threads);
  if (cfg.format == "csv") {
    out << "n,d,s,eps,samples,seed,hits,p_hat,stderr\n"
        << rec.shape.order << ',' << rec.shape.arity << ','
        << rec.query.subset_size << ',' << rec.query.max_exceedance << ','
        << rec.samples << ',' << rec.seed << ',' << rec.hits << ','
        << json(rec.p_hat).dump() << ',' << json(rec.std_error).dump() << '\n';
  } else {
    out << rec.to_json() << '\n';
  }
  err << "mc: p_hat = " << Fixed(rec.p_hat, 6) << " +/- "
      << Fixed(rec.std_error, 6) << '\n';
  return kExitOk;
}

int Sweep(const std::vector<std::uint32_t>& orders, const QueryOptions& opts,
          const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = sweep(orders, opts.arity, opts.query(), cfg.samples,
                          cfg.seed, cfg.threads);
  if (cfg.format == "csv") {
    out << sweep_csv(rows);
  } else {
    for (const auto& r : rows) out << r.to_json() << '\n';
  }
  for (const auto& r : rows) {
    err << "n=" << r.estimate.shape.order << " p_hat=" << Fixed(r.estimate.p_hat, 4)
        << " poisson=" << Fixed(r.poisson_approx, 4)
        << " limit=" << Fixed(r.limit, 4) << '\n';
  }
  return kExitOk;
}

int Census(std::uint32_t order, const CommandConfig& cfg, std::ostream& out,
           std::ostream& err) {
  RequireJson(cfg, "census");
  const auto census = type_census(order, cfg.samples, cfg.seed, cfg.threads);
  const auto hist = count_distribution(census);
  const auto indep = independence_check(census);
  out << hist.to_json() << '\n' << indep.to_json() << '\n';
  err << "census: mean " << Fixed(hist.mean, 4) << ", lambda_n "
      << Fixed(to_double(hist.lambda), 4) << ", TV " << Fixed(hist.tv_distance, 4)
      << '\n';
  return kExitOk;
}

int Diagrams(std::uint32_t k, bool list, bool realizable_only,
             const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  RequireJson(cfg, "diagrams");
  if (list) {
    std::uint64_t count = 0;
    for_each_diagram(k, realizable_only, [&](const Diagram& d) {
      out << d.to_json() << '\n';
      ++count;
    });
    err << count << " diagram(s)\n";
    return kExitOk;
  }
  const auto census = diagram_census(k);
  json doc;
  doc["k"] = k;
  doc["realizable_only"] = realizable_only;
  doc["count"] = realizable_only ? census.realizable : census.diagrams;
  doc["diagrams"] = census.diagrams;
  doc["realizable"] = census.realizable;
  doc["perfect_matchings"] = census.perfect_matchings;
  doc["base_graphs"] = census.base_graphs;
  out << doc.dump() << '\n';
  err << doc["count"].get<std::uint64_t>() << " diagram(s)\n";
  return kExitOk;
}

int VerifyLemma3(std::uint32_t k_max, const CommandConfig& cfg,
                 std::ostream& out, std::ostream& err) {
  RequireJson(cfg, "verify-lemma3");
  const auto report = verify_lemma3(k_max);
  out << report.to_json() << '\n';
  err << "checked " << report.checked << ", violations "
      << report.violations.size() << '\n';
  return report.violations.empty() ? kExitOk : kExitVerificationFailed;
}

int Witness(const std::string& diagram_json, const CommandConfig& cfg,
            std::ostream& out, std::ostream& err) {
  RequireJson(cfg, "witness");
  const auto diagram = Diagram::from_json(diagram_json);
  const auto table = witness_groupoid(diagram);

  // The pairs named by the diagram must carry their labels in the witness.
  for (const auto& e : diagram.edges()) {
    if (classify_pair(table, e.a - 1, e.b - 1) != e.label) {
      err << "witness check failed on edge " << e.a << "-" << e.b << '\n';
      return kExitVerificationFailed;
    }
  }
  out << serialize_table(table);
  err << "witness of order " << table.order() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Deficient-set probabilities of random groupoids", "deflab"};
  app.require_subcommand(1);

  CommandConfig cfg;
  QueryOptions query;
  std::string path;
  std::string kind;
  std::uint32_t terms = 40;
  std::uint32_t edges = 1;
  std::vector<std::uint32_t> orders;
  bool list = false;
  bool count = false;
  bool realizable_only = false;
  std::uint32_t k_max = 3;
  std::string diagram_json;

  auto* classify = app.add_subcommand("classify", "List deficient subsets of a table file");
  classify->add_option("file", path, "Table file")->required();
  classify->add_option("--s", query.subset_size, "Subset size s (default 2)");
  classify->add_option("--eps", query.max_exceedance, "Maximum exceedance");
  classify->add_option("--type", query.type, "Restrict to one type T0..T7");
  AddCommon(classify, cfg);

  auto* theory = app.add_subcommand("theory", "Closed-form values");
  theory->add_option("kind", kind, "Quantity")
      ->required()
      ->check(CLI::IsMember({"pair2", "per-type", "dary", "exceedance",
                             "partial-sum", "expected-count", "class-counts"}));
  auto* d_opt = theory->add_option("--d", query.arity, "Arity d");
  auto* s_opt = theory->add_option("--s", query.subset_size, "Subset size s");
  theory->add_option("--K", terms, "Partial-sum terms")->check(CLI::PositiveNumber);
  theory->add_option("--n", query.order, "Order n");
  theory->add_option("--eps", query.max_exceedance, "Maximum exceedance");
  theory->add_option("--k", edges, "Configuration size k");
  AddCommon(theory, cfg);

  auto* exact = app.add_subcommand("exact", "Exhaustive enumeration over all tables");
  AddQuery(exact, query, true);
  AddCommon(exact, cfg);

  auto* mc = app.add_subcommand("mc", "Monte Carlo probability estimate");
  AddQuery(mc, query, true);
  AddCommon(mc, cfg);

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo estimates over several orders");
  sweep_cmd->add_option("--n-list", orders, "Comma-separated orders")
      ->required()
      ->delimiter(',');
  AddQuery(sweep_cmd, query, false);
  AddCommon(sweep_cmd, cfg);

  auto* census = app.add_subcommand("census", "Pair-count histogram and type correlations");
  census->add_option("--n", query.order, "Order n")->required();
  AddCommon(census, cfg);

  auto* diagrams = app.add_subcommand("diagrams", "Enumerate configuration diagrams");
  diagrams->add_option("--k", edges, "Edge count")->required();
  diagrams->add_flag("--count", count, "Print counts (default)");
  diagrams->add_flag("--list", list, "Print every diagram");
  diagrams->add_flag("--realizable-only", realizable_only, "Keep realizable diagrams only");
  AddCommon(diagrams, cfg);

  auto* lemma3 = app.add_subcommand("verify-lemma3", "Check the diagram invariants");
  lemma3->add_option("--k-max", k_max, "Largest edge count (<= 3)")->required();
  AddCommon(lemma3, cfg);

  auto* witness = app.add_subcommand("witness", "Smallest table realizing a diagram");
  witness->add_option("--diagram", diagram_json, "Diagram JSON")->required();
  AddCommon(witness, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify->parsed()) return Classify(path, query, cfg, out, err);
    if (theory->parsed())
      return Theory(kind, query, terms, edges, d_opt->count() > 0,
                    s_opt->count() > 0, cfg, out, err);
    if (exact->parsed()) return Exact(query, cfg, out, err);
    if (mc->parsed()) return MonteCarlo(query, cfg, out, err);
    if (sweep_cmd->parsed()) return Sweep(orders, query, cfg, out, err);
    if (census->parsed()) return Census(query.order, cfg, out, err);
    if (diagrams->parsed())
      return Diagrams(edges, list, realizable_only, cfg, out, err);
    if (lemma3->parsed()) return VerifyLemma3(k_max, cfg, out, err);
    if (witness->parsed()) return Witness(diagram_json, cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace deflab::cli
