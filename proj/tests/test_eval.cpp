#include <gtest/gtest.h>

#include <set>

#include "c2c/error.hpp"
#include "c2c/eval.hpp"
#include "c2c/io.hpp"
#include "c2c/synth.hpp"
#include "support.hpp"

using namespace c2c;
using namespace c2c::testing;

namespace {

std::vector<Transaction> numbered(std::size_t n) {
  std::vector<Transaction> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(trade("t" + std::to_string(i), "s" + std::to_string(i % 7), "b" + std::to_string(i % 13)));
  }
  return out;
}

RunConfig sized(std::vector<std::size_t> sizes) {
  RunConfig c;
  c.eval.list_sizes = std::move(sizes);
  return c;
}

const MetricPoint& at(const std::vector<MetricPoint>& curve, std::size_t size) {
  for (const auto& p : curve) {
    if (p.size == size) return p;
  }
  throw std::out_of_range("no such list size");
}

// Target t shares seller a with v; v also bought from d. Held out: d -> t.
std::vector<Transaction> walkthrough_training() {
  return {trade("t1", "a", "t", "ia"), trade("t2", "a", "v", "ia"), trade("t3", "d", "v", "x")};
}

RunConfig small_experiment() {
  RunConfig c;
  c.eval.folds = 5;
  c.eval.samples = 20;
  c.eval.list_sizes = {1, 2, 3, 5, 8};
  return c;
}

SynthSpec small_spec() {
  SynthSpec s;
  s.buyers = 200;
  s.sellers = 50;
  s.transactions = 500;
  s.communities = 10;
  return s;
}

}  // namespace

TEST(Folds, TenTransactionsTenFolds) {
  auto plan = make_folds(numbered(10), 10, 1);
  for (std::size_t n : plan.sizes()) EXPECT_EQ(n, 1u);
}

TEST(Folds, PaperScaleSizes) {
  auto plan = make_folds(numbered(2066), 10, 42);
  std::size_t total = 0;
  for (std::size_t n : plan.sizes()) {
    EXPECT_TRUE(n == 206 || n == 207) << n;
    total += n;
  }
  EXPECT_EQ(total, 2066u);
  EXPECT_EQ(plan.fold_of, make_folds(numbered(2066), 10, 42).fold_of);
  EXPECT_NE(plan.fold_of, make_folds(numbered(2066), 10, 43).fold_of);
}

TEST(Folds, SplitCoversEveryTransactionOnce) {
  auto txns = numbered(101);
  auto plan = make_folds(txns, 7, 3);
  std::multiset<std::string> validation_ids;
  for (std::size_t f = 0; f < plan.k; ++f) {
    auto split = split_fold(txns, plan, f);
    EXPECT_EQ(split.training.size() + split.validation.size(), txns.size());
    for (const auto& t : split.validation) validation_ids.insert(t.id);
  }
  EXPECT_EQ(validation_ids.size(), txns.size());
  EXPECT_EQ(std::set<std::string>(validation_ids.begin(), validation_ids.end()).size(), txns.size());
}

TEST(Folds, InvalidRequestsAreConfigErrors) {
  EXPECT_THROW(make_folds(numbered(10), 1, 0), ConfigError);
  EXPECT_THROW(make_folds(numbered(3), 10, 0), ConfigError);
}

TEST(Targets, ShortfallRecorded) {
  auto sample = sample_targets(trades({{"s", "b1"}, {"s", "b2"}, {"x", "b3"}}), 50, 9);
  EXPECT_EQ(sample.targets, (std::vector<std::string>{"b1", "b2", "b3"}));
  EXPECT_EQ(sample.eligible, 3u);
  EXPECT_EQ(sample.shortfall, 47u);
}

TEST(Targets, SeededDistinctBuyersWithHeldOutEdges) {
  auto txns = numbered(400);
  auto a = sample_targets(txns, 5, 77);
  EXPECT_EQ(a.targets, sample_targets(txns, 5, 77).targets);
  EXPECT_EQ(a.targets.size(), 5u);
  EXPECT_EQ(std::set<std::string>(a.targets.begin(), a.targets.end()).size(), 5u);
  for (const auto& t : a.targets) EXPECT_EQ(t[0], 'b');
}

TEST(Targets, LinkCapRestrictsEligibility) {
  auto txns = trades({{"s1", "busy"}, {"s2", "busy"}, {"s3", "busy"}, {"s1", "calm"}});
  auto sample = sample_targets(txns, 10, 1, 2);
  EXPECT_EQ(sample.targets, (std::vector<std::string>{"calm"}));
}

TEST(Metrics, FMeasureArithmetic) {
  EXPECT_DOUBLE_EQ(f_measure(0.4, 1.0), 4.0 / 7.0);
  EXPECT_EQ(f_measure(0.0, 0.0), 0.0);
  EXPECT_EQ(f_measure(1.0, 1.0), 1.0);
}

TEST(Metrics, PerfectSingleHit) {
  auto model = build_fold_model(walkthrough_training(), {});
  auto curve = evaluate_user_level(model, {trade("v1", "d", "t", "x")}, {"t"}, UserMode::m1, sized({1, 2}), 0);
  EXPECT_EQ(at(curve, 1), (MetricPoint{1, 1.0, 1.0, 1.0}));
  // Only one candidate exists, so only one prediction is ever issued.
  EXPECT_EQ(at(curve, 2), (MetricPoint{2, 1.0, 1.0, 1.0}));
}

TEST(Metrics, CorrectSellerWrongItem) {
  auto model = build_fold_model(walkthrough_training(), {});
  const std::vector<Transaction> validation = {trade("v1", "d", "t", "other")};
  auto config = sized({1});
  auto user = evaluate_user_level(model, validation, {"t"}, UserMode::m1, config, 0);
  auto item = evaluate_item_level(model, validation, {"t"}, ItemMethod::best_selling, config, 0);
  EXPECT_EQ(user[0].precision, 1.0);
  EXPECT_EQ(item[0].precision, 0.0);
  EXPECT_EQ(item[0].recall, 0.0);
  auto exact = evaluate_item_level(model, {trade("v1", "d", "t", "x")}, {"t"}, ItemMethod::best_selling, config, 0);
  EXPECT_EQ(exact[0].precision, 1.0);
}

TEST(Metrics, ExtraPredictionsLowerPrecision) {
  // v bought from a (shared with t) and from seven identical sellers d1..d7,
  // so every candidate ties and ascending id decides the order.
  std::vector<Transaction> training = {trade("t0", "a", "t", "ia"), trade("t1", "a", "v", "ia")};
  for (int i = 1; i <= 7; ++i) training.push_back(trade("t1" + std::to_string(i), "d" + std::to_string(i), "v", "x"));
  auto model = build_fold_model(training, {});
  const std::vector<Transaction> validation = {trade("v1", "d1", "t", "x"), trade("v2", "d2", "t", "x")};
  auto curve = evaluate_user_level(model, validation, {"t"}, UserMode::m1, sized({1, 5, 10}), 0);
  EXPECT_DOUBLE_EQ(at(curve, 5).precision, 2.0 / 5.0);
  EXPECT_EQ(at(curve, 5).recall, 1.0);
  EXPECT_DOUBLE_EQ(at(curve, 10).precision, 2.0 / 7.0);
  EXPECT_LT(at(curve, 10).precision, at(curve, 5).precision);
  EXPECT_DOUBLE_EQ(at(curve, 5).f_measure, f_measure(0.4, 1.0));
}

TEST(Metrics, UnknownTargetCountsTowardRecallOnly) {
  auto model = build_fold_model(walkthrough_training(), {});
  const std::vector<Transaction> validation = {trade("v1", "d", "t", "x"), trade("v2", "a", "newcomer", "ia")};
  auto curve = evaluate_user_level(model, validation, {"newcomer", "t"}, UserMode::m1, sized({1}), 0);
  EXPECT_EQ(curve[0].precision, 1.0);
  EXPECT_EQ(curve[0].recall, 0.5);
}

TEST(Metrics, M2DrawsFromStageOneCandidates) {
  std::vector<Transaction> training = {trade("t0", "a", "t", "ia"), trade("t1", "a", "v", "ia")};
  for (int i = 1; i <= 7; ++i) training.push_back(trade("t1" + std::to_string(i), "d" + std::to_string(i), "v", "x"));
  auto model = build_fold_model(training, {});
  RunConfig config;
  auto m2 = predict_sellers(model, "t", UserMode::m2, config, 3, 25);
  auto m1 = predict_sellers(model, "t", UserMode::m1, config, 3, 25);
  EXPECT_EQ(std::set<UserIx>(m2.begin(), m2.end()), std::set<UserIx>(m1.begin(), m1.end()));
  EXPECT_EQ(m2, predict_sellers(model, "t", UserMode::m2, config, 3, 25));
  EXPECT_EQ(predict_sellers(model, "t", UserMode::m2, config, 3, 4).size(), 4u);
}

TEST(HoldOut, TrainingArtifactsIgnoreValidation) {
  auto txns = generate_synthetic(small_spec(), 5);
  auto plan = make_folds(txns, 5, 11);
  auto split = split_fold(txns, plan, 2);
  RunConfig config;
  auto model = build_fold_model(split.training, config);

  std::set<std::string> held_out;
  for (const auto& t : split.validation) held_out.insert(t.id);
  for (const auto& t : model.training.transactions()) EXPECT_FALSE(held_out.contains(t.id));

  // Rebuilding from the training folds alone reproduces every artifact.
  std::vector<Transaction> rest;
  for (const auto& t : txns) {
    if (!held_out.contains(t.id)) rest.push_back(t);
  }
  auto rebuilt = build_fold_model(rest, config);
  EXPECT_EQ(rebuilt.training.transactions(), model.training.transactions());
  EXPECT_EQ(rebuilt.rules, model.rules);
  for (UserIx a : model.similarity.active_users()) {
    for (UserIx b : model.similarity.active_users()) ASSERT_EQ(rebuilt.similarity.value(a, b), model.similarity.value(a, b));
  }

  // Predictions depend on the validation set only through the target list.
  auto sample = sample_targets(split.validation, 20, 1);
  for (const auto& target : sample.targets) {
    EXPECT_EQ(predict_sellers(model, target, UserMode::m1, config, 2, 10),
              predict_sellers(rebuilt, target, UserMode::m1, config, 2, 10));
  }
}

TEST(Experiment, SeriesShapeAndAggregateIsMean) {
  auto txns = generate_synthetic(small_spec(), 6);
  auto config = small_experiment();
  auto report = run_experiment(txns, config);
  ASSERT_EQ(report.series.size(), 5u);
  for (const char* name : {"M1/user", "M2/user", "M1/item/best_selling", "M1/item/random", "M1/item/rules"}) {
    EXPECT_NE(report.find(name), nullptr) << name;
  }
  for (const auto& s : report.series) {
    ASSERT_EQ(s.aggregate.size(), config.eval.list_sizes.size());
    ASSERT_EQ(s.per_fold.size(), config.eval.folds);
    for (std::size_t i = 0; i < s.aggregate.size(); ++i) {
      double p = 0, r = 0, f = 0;
      std::size_t used = 0;
      for (const auto& curve : s.per_fold) {
        if (curve.empty()) continue;
        p += curve[i].precision;
        r += curve[i].recall;
        f += curve[i].f_measure;
        ++used;
      }
      ASSERT_GT(used, 0u);
      EXPECT_NEAR(s.aggregate[i].precision, p / used, 1e-15);
      EXPECT_NEAR(s.aggregate[i].recall, r / used, 1e-15);
      EXPECT_NEAR(s.aggregate[i].f_measure, f / used, 1e-15);
      EXPECT_LE(s.aggregate[i].f_measure, s.maximum.f_measure);
    }
    for (const auto& curve : s.per_fold) {
      for (const auto& pt : curve) {
        EXPECT_GE(pt.precision, 0.0);
        EXPECT_LE(pt.precision, 1.0);
        EXPECT_LE(pt.recall, 1.0);
        EXPECT_DOUBLE_EQ(pt.f_measure, f_measure(pt.precision, pt.recall));
        if (pt.precision > 0 && pt.recall > 0) {
          EXPECT_GE(pt.f_measure, std::min(pt.precision, pt.recall) - 1e-15);
          EXPECT_LE(pt.f_measure, std::max(pt.precision, pt.recall) + 1e-15);
        }
      }
    }
  }
}

TEST(Experiment, DefaultListSizesGiveTwentyFivePoints) {
  RunConfig config;
  config.eval.folds = 3;
  config.eval.samples = 5;
  config.eval.mode = EvalMode::m1;
  auto report = run_experiment(generate_synthetic(small_spec(), 7), config);
  EXPECT_EQ(report.find("M2/user"), nullptr);
  ASSERT_NE(report.find("M1/user"), nullptr);
  EXPECT_EQ(report.find("M1/user")->aggregate.size(), 25u);
}

TEST(Experiment, ThreadCountDoesNotChangeReport) {
  auto txns = generate_synthetic(small_spec(), 8);
  auto config = small_experiment();
  config.threads = 1;
  const auto serial = report_json(run_experiment(txns, config)).dump(2);
  config.threads = 4;
  const auto parallel = report_json(run_experiment(txns, config)).dump(2);
  // The thread count itself is not part of the echoed config.
  EXPECT_EQ(serial, parallel);
}

TEST(Experiment, InvalidFusionFailsBeforeAnyFold) {
  RunConfig config;
  config.fusion = {0.5, 0.5, 0.1};
  EXPECT_THROW(run_experiment(numbered(50), config), ConfigError);
}

TEST(Experiment, SkippedFoldsAreExcludedFromMeans) {
  std::vector<std::vector<MetricPoint>> per_fold = {{{1, 0.5, 0.5, 0.5}}, {}, {{1, 0.1, 0.3, f_measure(0.1, 0.3)}}};
  auto mean = mean_curve(per_fold, {1});
  ASSERT_EQ(mean.size(), 1u);
  EXPECT_DOUBLE_EQ(mean[0].precision, 0.3);
  EXPECT_DOUBLE_EQ(mean[0].recall, 0.4);
}
