#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "c2c/apriori.hpp"
#include "c2c/item_select.hpp"
#include "c2c/scoring.hpp"
#include "c2c/similarity.hpp"
#include "c2c/transaction.hpp"

namespace c2c {

enum class EvalMode { m1, m2, both };

std::string_view to_string(EvalMode m);
EvalMode parse_eval_mode(std::string_view name);

struct EvalSettings {
  std::size_t folds = 10;
  std::size_t samples = 50;
  std::vector<std::size_t> list_sizes = default_list_sizes();
  EvalMode mode = EvalMode::both;
  // Only buyers with at most this many distinct held-out sellers are
  // eligible targets; 0 disables the cap.
  std::size_t max_held_out_links = 0;

  static std::vector<std::size_t> default_list_sizes();
};

// Every tunable of a run. Flags and config-file keys map onto these fields.
struct RunConfig {
  SimRankParams simrank;
  std::size_t similar_users = 10;  // n
  FusionWeights fusion;
  ItemMethod item_method = ItemMethod::best_selling;
  AprioriParams apriori;
  EvalSettings eval;
  std::uint64_t seed = 42;
  RatingScale rating_scale{1.0, 5.0};
  unsigned threads = 1;
};

// Throws ConfigError on the first violated constraint.
void validate(const RunConfig& config);

}  // namespace c2c
