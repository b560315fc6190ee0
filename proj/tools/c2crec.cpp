// c2crec: seller/item recommendation and link-prediction evaluation for
// C2C transaction networks.
//
// Exit codes: 0 ok, 1 io, 2 schema, 3 lookup, 4 config.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "c2c/apriori.hpp"
#include "c2c/config.hpp"
#include "c2c/csv_ingest.hpp"
#include "c2c/error.hpp"
#include "c2c/eval.hpp"
#include "c2c/graph.hpp"
#include "c2c/io.hpp"
#include "c2c/item_select.hpp"
#include "c2c/scoring.hpp"
#include "c2c/similarity.hpp"
#include "c2c/synth.hpp"

namespace {

enum ExitCode { kOk = 0, kIo = 1, kSchema = 2, kLookup = 3, kConfig = 4 };

using namespace c2c;

// Accepts "1-25", "1,5,10" or a mix such as "1-5,10,25".
std::vector<std::size_t> parse_list_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      auto dash = part.find('-');
      if (dash == std::string::npos) {
        sizes.push_back(std::stoul(part));
      } else {
        std::size_t lo = std::stoul(part.substr(0, dash));
        std::size_t hi = std::stoul(part.substr(dash + 1));
        if (lo > hi) throw ConfigError("empty list-size range '" + part + "'");
        for (std::size_t s = lo; s <= hi; ++s) sizes.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("bad list-sizes entry '" + part + "'");
    }
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

struct Options {
  RunConfig config;
  std::string method = "best_selling";
  std::string mode = "both";
  std::string list_sizes = "1-25";

  // Turns the textual options into the typed config.
  void finalize() {
    config.item_method = parse_item_method(method);
    config.eval.mode = parse_eval_mode(mode);
    config.eval.list_sizes = parse_list_sizes(list_sizes);
  }
};

void add_run_options(CLI::App& app, Options& o) {
  auto& c = o.config;
  app.add_option("--C", c.simrank.damping, "SimRank damping factor in (0,1)")->capture_default_str();
  app.add_option("--max-iters", c.simrank.max_iterations, "SimRank iteration cap")->capture_default_str();
  app.add_option("--tol", c.simrank.tolerance, "SimRank convergence tolerance")->capture_default_str();
  app.add_option("--n", c.similar_users, "Similar users per target")->capture_default_str();
  app.add_option("--alpha", c.fusion.alpha, "Category score weight")->capture_default_str();
  app.add_option("--beta", c.fusion.beta, "Rating score weight")->capture_default_str();
  app.add_option("--gamma", c.fusion.gamma, "Reputation score weight")->capture_default_str();
  app.add_option("--method", o.method, "Item selection: best_selling | random | rules")->capture_default_str();
  app.add_option("--min-support", c.apriori.min_support, "Apriori minimum support")->capture_default_str();
  app.add_option("--min-confidence", c.apriori.min_confidence, "Apriori minimum confidence")->capture_default_str();
  app.add_option("--min-count", c.apriori.min_count, "Apriori minimum supporting baskets")->capture_default_str();
  app.add_option("--k", c.eval.folds, "Cross-validation folds")->capture_default_str();
  app.add_option("--samples", c.eval.samples, "Targets sampled per fold")->capture_default_str();
  app.add_option("--list-sizes", o.list_sizes, "Prediction list sizes, e.g. 1-25 or 1,5,10")->capture_default_str();
  app.add_option("--mode", o.mode, "User-level series: M1 | M2 | both")->capture_default_str();
  app.add_option("--max-held-out-links", c.eval.max_held_out_links,
                 "Only sample targets with at most this many held-out sellers (0 = no cap)")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Run seed")->capture_default_str();
  app.add_option("--rating-min", c.rating_scale.min, "Raw rating scale minimum")->capture_default_str();
  app.add_option("--rating-max", c.rating_scale.max, "Raw rating scale maximum")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads")->capture_default_str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void print_stats(std::ostream& os, const GraphStats& s) {
  os << "users " << s.users << ", transactions " << s.transactions << ", edges " << s.edges << '\n'
     << "density " << std::setprecision(6) << s.density << ", average degree " << s.average_degree
     << ", max in-degree " << s.max_in_degree << ", max out-degree " << s.max_out_degree << '\n';
}

int cmd_ingest(const std::string& input, const std::string& output, const RatingScale& scale) {
  auto result = ingest_csv(input, scale);
  for (const auto& r : result.rejected) {
    std::cerr << input << ":" << r.line << ": column " << r.column << ": " << r.message << '\n';
  }
  auto txns = result.transactions;
  auto g = CommercialGraph::build(std::move(txns));
  auto out = open_output(output);
  write_graph_cache(out, result.transactions);
  std::cout << result.transactions.size() << " transactions accepted, " << result.rejected.size()
            << " rows rejected\n";
  print_stats(std::cout, graph_stats(g));
  return kOk;
}

int cmd_recommend(const std::string& graph_path, const std::string& user, std::size_t top,
                  const std::string& similarity_cache, const std::string& output, const RunConfig& config) {
  validate(config);
  auto g = CommercialGraph::build(load_transactions(graph_path, config.rating_scale));
  const UserIx u = g.require_user(user);

  SimilarityTable table;
  if (!similarity_cache.empty() && std::filesystem::exists(similarity_cache)) {
    std::ifstream in(similarity_cache);
    if (!in) throw IoError("cannot open '" + similarity_cache + "'");
    table = read_similarity(in, g);
  } else {
    table = compute_simrank(g, config.simrank, config.threads);
    if (!similarity_cache.empty()) {
      auto out = open_output(similarity_cache);
      write_similarity(out, table, g);
    }
  }

  auto set = candidate_sellers(g, u, top_n_similar(table, u, config.similar_users));
  std::vector<ScoredCandidate> ranked;
  bool cold = set.candidates.empty();
  if (cold) {
    for (UserIx s : cold_start_candidates(g, u, top)) ranked.push_back(ScoredCandidate{s, {}, {}, 0.0});
  } else {
    ranked = rank_scored(score_candidates(g, u, set.candidates), config.fusion, top);
  }

  std::vector<AssociationRule> rules;
  if (config.item_method == ItemMethod::rules) rules = mine_rules(g, config.apriori);
  auto rec = build_recommendations(g, ranked, u, {config.item_method, config.seed, &rules});
  rec.cold_start = cold;

  auto doc = ranking_json(g, user, config.fusion, cold ? std::vector<ScoredCandidate>{} : ranked, rec);
  doc["config"] = config_json(config);
  if (output.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    auto out = open_output(output);
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_evaluate(const std::string& input, const std::string& output, const std::string& csv,
                 const RunConfig& config) {
  validate(config);
  auto txns = load_transactions(input, config.rating_scale);
  auto report = run_experiment(txns, config);
  {
    auto out = open_output(output);
    out << report_json(report).dump(2) << '\n';
  }
  if (!csv.empty()) {
    auto out = open_output(csv);
    write_report_csv(out, report);
  }

  std::cout << "series                    size  precision   recall      f\n";
  for (const auto& s : report.series) {
    for (const auto& p : s.aggregate) {
      std::printf("%-24s %5zu  %9.4f  %7.4f  %7.4f\n", s.name.c_str(), p.size, p.precision, p.recall, p.f_measure);
    }
  }
  std::cout << "\nmaximum over list sizes\n";
  for (const auto& s : report.series) {
    std::printf("%-24s        %9.4f  %7.4f  %7.4f\n", s.name.c_str(), s.maximum.precision, s.maximum.recall,
                s.maximum.f_measure);
  }
  return kOk;
}

int cmd_synth(const SynthSpec& spec, std::uint64_t seed, const std::string& output) {
  auto txns = generate_synthetic(spec, seed);
  {
    auto out = open_output(output);
    write_csv(out, txns, spec.scale);
  }
  std::cout << "wrote " << txns.size() << " transactions to " << output << '\n';
  print_stats(std::cout, graph_stats(CommercialGraph::build(std::move(txns))));
  return kOk;
}

int cmd_mine_rules(const std::string& graph_path, const std::string& output, const RunConfig& config) {
  validate(config.apriori);
  auto g = CommercialGraph::build(load_transactions(graph_path, config.rating_scale));
  auto rules = mine_rules(g, config.apriori);
  if (output.empty()) {
    write_rules_jsonl(std::cout, g, rules);
  } else {
    auto out = open_output(output);
    write_rules_jsonl(out, g, rules);
    std::cout << rules.size() << " rules written to " << output << '\n';
  }
  return kOk;
}

int cmd_stats(const std::string& graph_path, const RunConfig& config) {
  std::size_t rejected = 0;
  auto g = CommercialGraph::build(load_transactions(graph_path, config.rating_scale, &rejected));
  auto doc = stats_json(graph_stats(g));
  doc["rejected_rows"] = rejected;
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C2C seller and item recommendation over transaction graphs"};
  app.set_config("--config", "", "Key-value config file; flags override its values");
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  add_run_options(app, opts);

  std::string input, output, graph_path, user, csv_out, similarity_cache;
  std::size_t top = 10;

  auto* ingest = app.add_subcommand("ingest", "Validate a transaction CSV and write a graph cache");
  ingest->add_option("--input", input, "Transaction CSV")->required();
  ingest->add_option("--output", output, "Graph cache (.json)")->required();

  auto* recommend = app.add_subcommand("recommend", "Recommend sellers and items for one user");
  recommend->add_option("--graph", graph_path, "Graph cache (.json) or transaction CSV")->required();
  recommend->add_option("--user", user, "Target user id")->required();
  recommend->add_option("--top", top, "Maximum number of sellers")->capture_default_str();
  recommend->add_option("--similarity-cache", similarity_cache, "Read (or create) a SimRank table cache");
  recommend->add_option("--output", output, "Write JSON here instead of stdout");

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated link-prediction evaluation");
  evaluate->add_option("--input", input, "Graph cache (.json) or transaction CSV")->required();
  evaluate->add_option("--output", output, "Report JSON")->required();
  evaluate->add_option("--csv", csv_out, "Also write the metric table as CSV");

  SynthSpec spec;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic transaction CSV");
  synth->add_option("--output", output, "CSV path")->required();
  synth->add_option("--buyers", spec.buyers)->capture_default_str();
  synth->add_option("--sellers", spec.sellers)->capture_default_str();
  synth->add_option("--categories", spec.categories)->capture_default_str();
  synth->add_option("--transactions", spec.transactions)->capture_default_str();
  synth->add_option("--communities", spec.communities)->capture_default_str();
  synth->add_option("--items-per-category", spec.items_per_category)->capture_default_str();
  synth->add_option("--items-per-seller", spec.items_per_seller)->capture_default_str();
  synth->add_option("--affinity", spec.affinity, "Planted-structure strength in [0,1]")->capture_default_str();
  synth->add_option("--item-skew", spec.item_skew, "Zipf exponent of item popularity")->capture_default_str();
  synth->add_option("--seller-skew", spec.seller_skew)->capture_default_str();
  synth->add_option("--buyer-skew", spec.buyer_skew)->capture_default_str();
  synth->add_option("--quality-preference", spec.quality_preference, "Buyer preference for well-rated sellers")
      ->capture_default_str();
  synth->add_option("--primary-share", spec.primary_share)->capture_default_str();
  synth->add_option("--rating-noise", spec.rating_noise)->capture_default_str();
  synth->add_option("--dual-role", spec.dual_role, "Fraction of sellers that also buy")->capture_default_str();

  auto* rules = app.add_subcommand("mine-rules", "Mine association rules over purchase baskets");
  rules->add_option("--graph", graph_path, "Graph cache (.json) or transaction CSV")->required();
  rules->add_option("--output", output, "JSON lines file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Print graph statistics");
  stats->add_option("--graph", graph_path, "Graph cache (.json) or transaction CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    opts.finalize();
    const auto& config = opts.config;
    if (ingest->parsed()) return cmd_ingest(input, output, config.rating_scale);
    if (recommend->parsed()) return cmd_recommend(graph_path, user, top, similarity_cache, output, config);
    if (evaluate->parsed()) return cmd_evaluate(input, output, csv_out, config);
    if (synth->parsed()) {
      spec.scale = config.rating_scale;
      return cmd_synth(spec, config.seed, output);
    }
    if (rules->parsed()) return cmd_mine_rules(graph_path, output, config);
    if (stats->parsed()) return cmd_stats(graph_path, config);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSchema;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLookup;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
