#include "c2c/config.hpp"

#include <algorithm>

#include "c2c/error.hpp"
#include "c2c/format.hpp"

namespace c2c {

std::string_view to_string(EvalMode m) {
  switch (m) {
    case EvalMode::m1: return "M1";
    case EvalMode::m2: return "M2";
    case EvalMode::both: return "both";
  }
  return "unknown";
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "M1" || name == "m1") return EvalMode::m1;
  if (name == "M2" || name == "m2") return EvalMode::m2;
  if (name == "both") return EvalMode::both;
  throw ConfigError("unknown evaluation mode '" + std::string(name) + "' (expected M1, M2 or both)");
}

std::vector<std::size_t> EvalSettings::default_list_sizes() {
  std::vector<std::size_t> sizes(25);
  for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] = i + 1;
  return sizes;
}

void validate(const RunConfig& config) {
  validate(config.fusion);
  validate(config.simrank);
  validate(config.apriori);
  if (config.similar_users == 0) throw ConfigError("similar-user list size n must be at least 1");
  if (config.eval.folds < 2) throw ConfigError("fold count k must be at least 2");
  if (config.eval.samples == 0) throw ConfigError("target sample count must be at least 1");
  if (config.eval.list_sizes.empty()) throw ConfigError("at least one prediction list size is required");
  if (std::any_of(config.eval.list_sizes.begin(), config.eval.list_sizes.end(), [](std::size_t s) { return s == 0; })) {
    throw ConfigError("prediction list sizes must be at least 1");
  }
  if (!(config.rating_scale.min < config.rating_scale.max)) {
    throw ConfigError("rating scale requires min < max, got [" + format_real(config.rating_scale.min) + ", " +
                      format_real(config.rating_scale.max) + "]");
  }
}

}  // namespace c2c
