#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2c/apriori.hpp"
#include "c2c/config.hpp"
#include "c2c/graph.hpp"
#include "c2c/item_select.hpp"
#include "c2c/similarity.hpp"
#include "c2c/transaction.hpp"

namespace c2c {

// Assignment of transactions (by position in the input list) to k folds.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> fold_of;

  std::vector<std::size_t> sizes() const;
};

// Seeded permutation dealt round-robin, so fold sizes differ by at most
// one. Throws ConfigError when k < 2 or there are fewer transactions than
// folds.
FoldPlan make_folds(const std::vector<Transaction>& transactions, std::size_t k, std::uint64_t seed);

struct FoldSplit {
  std::vector<Transaction> training;
  std::vector<Transaction> validation;
};

FoldSplit split_fold(const std::vector<Transaction>& transactions, const FoldPlan& plan, std::size_t fold);

struct TargetSample {
  std::vector<std::string> targets;  // ascending
  std::size_t eligible = 0;
  std::size_t shortfall = 0;  // requested minus returned
};

// Uniform sample without replacement of buyers with at least one held-out
// purchase. `max_links` > 0 restricts eligibility to buyers with at most
// that many distinct held-out sellers.
TargetSample sample_targets(const std::vector<Transaction>& validation, std::size_t count, std::uint64_t seed,
                            std::size_t max_links = 0);

struct MetricPoint {
  std::size_t size = 0;  // predictions per user
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;

  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

// Harmonic mean; 0 when precision + recall is 0.
double f_measure(double precision, double recall);

// Everything a fold's predictions may depend on, built from the training
// transactions alone.
struct FoldModel {
  CommercialGraph training;
  SimilarityTable similarity;
  std::vector<AssociationRule> rules;
};

FoldModel build_fold_model(std::vector<Transaction> training, const RunConfig& config, unsigned threads = 1);

enum class UserMode { m1, m2 };

// Seller predictions for one target, best first, at most `limit` long. M1
// ranks stage-1 candidates with the fused scores; M2 shuffles them with
// derive_seed(seed, "m2", {fold, hash(target)}). Users unknown to the
// training graph get no predictions.
std::vector<UserIx> predict_sellers(const FoldModel& model, const std::string& target, UserMode mode,
                                    const RunConfig& config, std::size_t fold, std::size_t limit);

// (seller, item) predictions from the M1 ranking with one item per seller.
std::vector<std::pair<UserIx, ItemIx>> predict_items(const FoldModel& model, const std::string& target,
                                                     ItemMethod method, const RunConfig& config, std::size_t fold,
                                                     std::size_t limit);

// A user-level prediction is true when the validation set holds a
// (seller, target) transaction; recall counts distinct such links.
std::vector<MetricPoint> evaluate_user_level(const FoldModel& model, const std::vector<Transaction>& validation,
                                             const std::vector<std::string>& targets, UserMode mode,
                                             const RunConfig& config, std::size_t fold);

// An item-level prediction is true when the validation set holds the exact
// (seller, target, item) transaction.
std::vector<MetricPoint> evaluate_item_level(const FoldModel& model, const std::vector<Transaction>& validation,
                                             const std::vector<std::string>& targets, ItemMethod method,
                                             const RunConfig& config, std::size_t fold);

struct FoldSummary {
  std::size_t fold = 0;
  std::size_t training_transactions = 0;
  std::size_t validation_transactions = 0;
  std::size_t eligible_targets = 0;
  std::size_t targets = 0;
  std::size_t shortfall = 0;
  bool skipped = false;  // no eligible target
  std::size_t simrank_iterations = 0;
  std::size_t rules = 0;
};

enum class Level { user, item };

struct SeriesReport {
  std::string name;
  UserMode mode = UserMode::m1;
  Level level = Level::user;
  std::optional<ItemMethod> method;
  // One curve per fold, empty for skipped folds.
  std::vector<std::vector<MetricPoint>> per_fold;
  // Mean over non-skipped folds at each list size.
  std::vector<MetricPoint> aggregate;
  // Maximum of each metric over list sizes (taken independently).
  MetricPoint maximum;
};

struct ExperimentReport {
  RunConfig config;
  std::size_t transactions = 0;
  std::vector<FoldSummary> folds;
  std::vector<SeriesReport> series;

  const SeriesReport* find(std::string_view name) const;
};

// Full cross-validated run. Folds run on config.threads workers; the
// report is identical for any thread count. Validates the config before
// any fold runs. Throws std::logic_error if an item-level metric ever
// exceeds its user-level counterpart.
ExperimentReport run_experiment(const std::vector<Transaction>& transactions, const RunConfig& config);

// Mean of per-fold curves, skipping empty ones.
std::vector<MetricPoint> mean_curve(const std::vector<std::vector<MetricPoint>>& per_fold,
                                    const std::vector<std::size_t>& sizes);

}  // namespace c2c
