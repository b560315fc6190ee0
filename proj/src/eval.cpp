#include "c2c/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "c2c/error.hpp"
#include "c2c/parallel.hpp"
#include "c2c/rng.hpp"
#include "c2c/scoring.hpp"

namespace c2c {

std::vector<std::size_t> FoldPlan::sizes() const {
  std::vector<std::size_t> out(k, 0);
  for (auto f : fold_of) ++out[f];
  return out;
}

FoldPlan make_folds(const std::vector<Transaction>& transactions, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be at least 2");
  if (transactions.size() < k) {
    throw ConfigError("need at least " + std::to_string(k) + " transactions for " + std::to_string(k) +
                      " folds, got " + std::to_string(transactions.size()));
  }
  std::vector<std::uint32_t> order(transactions.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  shuffle(order, rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_of.assign(transactions.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) plan.fold_of[order[pos]] = static_cast<std::uint32_t>(pos % k);
  return plan;
}

FoldSplit split_fold(const std::vector<Transaction>& transactions, const FoldPlan& plan, std::size_t fold) {
  FoldSplit split;
  for (std::size_t i = 0; i < transactions.size(); ++i) {
    (plan.fold_of[i] == fold ? split.validation : split.training).push_back(transactions[i]);
  }
  return split;
}

TargetSample sample_targets(const std::vector<Transaction>& validation, std::size_t count, std::uint64_t seed,
                            std::size_t max_links) {
  std::map<std::string, std::set<std::string>> links;
  for (const auto& t : validation) links[t.buyer].insert(t.seller);

  std::vector<std::string> eligible;
  for (const auto& [buyer, sellers] : links) {
    if (max_links == 0 || sellers.size() <= max_links) eligible.push_back(buyer);
  }

  TargetSample sample;
  sample.eligible = eligible.size();
  Rng rng(seed);
  const std::size_t take = std::min(count, eligible.size());
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(eligible[i], eligible[i + uniform_index(rng, eligible.size() - i)]);
  }
  eligible.resize(take);
  std::sort(eligible.begin(), eligible.end());
  sample.targets = std::move(eligible);
  sample.shortfall = count - take;
  return sample;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

FoldModel build_fold_model(std::vector<Transaction> training, const RunConfig& config, unsigned threads) {
  FoldModel model;
  model.training = CommercialGraph::build(std::move(training));
  model.similarity = compute_simrank(model.training, config.simrank, threads);
  model.rules = mine_rules(model.training, config.apriori);
  return model;
}

namespace {

std::uint64_t task_seed(const RunConfig& config, std::string_view tag, std::size_t fold, const std::string& target) {
  return derive_seed(config.seed, tag, {fold, hash_string(target)});
}

std::vector<ScoredCandidate> m1_ranking(const FoldModel& model, UserIx u, const RunConfig& config,
                                        std::size_t limit) {
  auto set = candidate_sellers(model.training, u, top_n_similar(model.similarity, u, config.similar_users));
  return rank_scored(score_candidates(model.training, u, set.candidates), config.fusion, limit);
}

std::size_t max_size(const std::vector<std::size_t>& sizes) {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

// Pools hits over all targets: precision = hits / issued, recall = hits /
// relevant, both summed over targets.
std::vector<MetricPoint> pooled_metrics(const std::vector<std::vector<std::string>>& predicted,
                                        const std::vector<std::set<std::string>>& relevant,
                                        const std::vector<std::size_t>& sizes) {
  std::size_t relevant_total = 0;
  for (const auto& r : relevant) relevant_total += r.size();

  std::vector<MetricPoint> points;
  for (std::size_t s : sizes) {
    std::size_t issued = 0, hits = 0;
    for (std::size_t t = 0; t < predicted.size(); ++t) {
      const std::size_t n = std::min(s, predicted[t].size());
      issued += n;
      for (std::size_t i = 0; i < n; ++i) hits += relevant[t].count(predicted[t][i]);
    }
    MetricPoint p;
    p.size = s;
    p.precision = issued ? static_cast<double>(hits) / static_cast<double>(issued) : 0.0;
    p.recall = relevant_total ? static_cast<double>(hits) / static_cast<double>(relevant_total) : 0.0;
    p.f_measure = f_measure(p.precision, p.recall);
    points.push_back(p);
  }
  return points;
}

std::string item_key(const std::string& seller, const std::string& item) { return seller + '\x1f' + item; }

}  // namespace

std::vector<UserIx> predict_sellers(const FoldModel& model, const std::string& target, UserMode mode,
                                    const RunConfig& config, std::size_t fold, std::size_t limit) {
  auto u = model.training.find_user(target);
  if (!u) return {};
  std::vector<UserIx> out;
  if (mode == UserMode::m1) {
    for (const auto& c : m1_ranking(model, *u, config, limit)) out.push_back(c.seller);
  } else {
    auto set =
        candidate_sellers(model.training, *u, top_n_similar(model.similarity, *u, config.similar_users));
    out = std::move(set.candidates);
    Rng rng(task_seed(config, "m2", fold, target));
    shuffle(out, rng);
    if (out.size() > limit) out.resize(limit);
  }
  return out;
}

std::vector<std::pair<UserIx, ItemIx>> predict_items(const FoldModel& model, const std::string& target,
                                                     ItemMethod method, const RunConfig& config, std::size_t fold,
                                                     std::size_t limit) {
  auto u = model.training.find_user(target);
  if (!u) return {};
  ItemSelectionParams params{method, task_seed(config, "items", fold, target), &model.rules};
  auto rec = build_recommendations(model.training, m1_ranking(model, *u, config, limit), *u, params);
  std::vector<std::pair<UserIx, ItemIx>> out;
  for (const auto& e : rec.entries) out.emplace_back(e.seller, e.item);
  return out;
}

std::vector<MetricPoint> evaluate_user_level(const FoldModel& model, const std::vector<Transaction>& validation,
                                             const std::vector<std::string>& targets, UserMode mode,
                                             const RunConfig& config, std::size_t fold) {
  std::map<std::string, std::set<std::string>> links;
  for (const auto& t : validation) links[t.buyer].insert(t.seller);

  const std::size_t limit = max_size(config.eval.list_sizes);
  std::vector<std::vector<std::string>> predicted;
  std::vector<std::set<std::string>> relevant;
  for (const auto& target : targets) {
    std::vector<std::string> names;
    for (UserIx s : predict_sellers(model, target, mode, config, fold, limit)) names.push_back(model.training.user_id(s));
    predicted.push_back(std::move(names));
    auto it = links.find(target);
    relevant.push_back(it == links.end() ? std::set<std::string>{} : it->second);
  }
  return pooled_metrics(predicted, relevant, config.eval.list_sizes);
}

std::vector<MetricPoint> evaluate_item_level(const FoldModel& model, const std::vector<Transaction>& validation,
                                             const std::vector<std::string>& targets, ItemMethod method,
                                             const RunConfig& config, std::size_t fold) {
  std::map<std::string, std::set<std::string>> links;
  for (const auto& t : validation) links[t.buyer].insert(item_key(t.seller, t.item));

  const std::size_t limit = max_size(config.eval.list_sizes);
  std::vector<std::vector<std::string>> predicted;
  std::vector<std::set<std::string>> relevant;
  for (const auto& target : targets) {
    std::vector<std::string> keys;
    for (auto [s, i] : predict_items(model, target, method, config, fold, limit)) {
      keys.push_back(item_key(model.training.user_id(s), model.training.item_id(i)));
    }
    predicted.push_back(std::move(keys));
    auto it = links.find(target);
    relevant.push_back(it == links.end() ? std::set<std::string>{} : it->second);
  }
  return pooled_metrics(predicted, relevant, config.eval.list_sizes);
}

std::vector<MetricPoint> mean_curve(const std::vector<std::vector<MetricPoint>>& per_fold,
                                    const std::vector<std::size_t>& sizes) {
  std::vector<MetricPoint> mean(sizes.size());
  std::size_t used = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) mean[i].size = sizes[i];
  for (const auto& curve : per_fold) {
    if (curve.empty()) continue;
    ++used;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      mean[i].precision += curve[i].precision;
      mean[i].recall += curve[i].recall;
      mean[i].f_measure += curve[i].f_measure;
    }
  }
  if (used == 0) return mean;
  for (auto& p : mean) {
    p.precision /= static_cast<double>(used);
    p.recall /= static_cast<double>(used);
    p.f_measure /= static_cast<double>(used);
  }
  return mean;
}

const SeriesReport* ExperimentReport::find(std::string_view name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

struct SeriesSpec {
  std::string name;
  UserMode mode;
  Level level;
  std::optional<ItemMethod> method;
};

std::vector<SeriesSpec> series_for(EvalMode mode) {
  std::vector<SeriesSpec> specs;
  if (mode != EvalMode::m2) specs.push_back({"M1/user", UserMode::m1, Level::user, std::nullopt});
  if (mode != EvalMode::m1) specs.push_back({"M2/user", UserMode::m2, Level::user, std::nullopt});
  if (mode != EvalMode::m2) {
    for (ItemMethod m : {ItemMethod::best_selling, ItemMethod::random, ItemMethod::rules}) {
      specs.push_back({"M1/item/" + std::string(to_string(m)), UserMode::m1, Level::item, m});
    }
  }
  return specs;
}

void check_level_dominance(const std::vector<MetricPoint>& user, const std::vector<MetricPoint>& item,
                           const std::string& series, std::size_t fold) {
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (item[i].precision > user[i].precision || item[i].recall > user[i].recall ||
        item[i].f_measure > user[i].f_measure) {
      throw std::logic_error("item-level metrics exceed user-level in " + series + ", fold " + std::to_string(fold) +
                             ", size " + std::to_string(user[i].size));
    }
  }
}

}  // namespace

ExperimentReport run_experiment(const std::vector<Transaction>& transactions, const RunConfig& config) {
  validate(config);
  const auto plan = make_folds(transactions, config.eval.folds, derive_seed(config.seed, "folds"));
  const auto specs = series_for(config.eval.mode);

  ExperimentReport report;
  report.config = config;
  report.transactions = transactions.size();
  report.folds.resize(plan.k);
  std::vector<std::vector<std::vector<MetricPoint>>> curves(specs.size(),
                                                            std::vector<std::vector<MetricPoint>>(plan.k));

  parallel_for(plan.k, config.threads, [&](std::size_t fold) {
    auto split = split_fold(transactions, plan, fold);
    auto& summary = report.folds[fold];
    summary.fold = fold;
    summary.training_transactions = split.training.size();
    summary.validation_transactions = split.validation.size();

    auto sample = sample_targets(split.validation, config.eval.samples, derive_seed(config.seed, "targets", {fold}),
                                 config.eval.max_held_out_links);
    summary.eligible_targets = sample.eligible;
    summary.targets = sample.targets.size();
    summary.shortfall = sample.shortfall;
    if (sample.targets.empty()) {
      summary.skipped = true;
      return;
    }

    const auto model = build_fold_model(std::move(split.training), config);
    summary.simrank_iterations = static_cast<std::size_t>(model.similarity.iterations_run());
    summary.rules = model.rules.size();

    std::optional<std::size_t> m1_user;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const auto& spec = specs[s];
      if (spec.level == Level::user) {
        curves[s][fold] = evaluate_user_level(model, split.validation, sample.targets, spec.mode, config, fold);
        if (spec.mode == UserMode::m1) m1_user = s;
      } else {
        curves[s][fold] = evaluate_item_level(model, split.validation, sample.targets, *spec.method, config, fold);
        if (m1_user) check_level_dominance(curves[*m1_user][fold], curves[s][fold], spec.name, fold);
      }
    }
  });

  for (std::size_t s = 0; s < specs.size(); ++s) {
    SeriesReport series;
    series.name = specs[s].name;
    series.mode = specs[s].mode;
    series.level = specs[s].level;
    series.method = specs[s].method;
    series.per_fold = std::move(curves[s]);
    series.aggregate = mean_curve(series.per_fold, config.eval.list_sizes);
    for (const auto& p : series.aggregate) {
      series.maximum.precision = std::max(series.maximum.precision, p.precision);
      series.maximum.recall = std::max(series.maximum.recall, p.recall);
      series.maximum.f_measure = std::max(series.maximum.f_measure, p.f_measure);
    }
    report.series.push_back(std::move(series));
  }
  return report;
}

}  // namespace c2c
