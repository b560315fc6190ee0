#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "c2c/transaction.hpp"

namespace c2c {

// Parameters of the synthetic marketplace. Defaults are sized to a
// ~2,000-transaction network with average degree near 1.3 and density
// near 0.001.
struct SynthSpec {
  std::size_t buyers = 1150;
  std::size_t sellers = 260;
  std::size_t categories = 12;
  std::size_t transactions = 2066;
  // Buyer communities. Each community favours two categories and a pool of
  // home sellers with a shared rating style.
  std::size_t communities = 40;
  std::size_t items_per_category = 40;
  std::size_t items_per_seller = 8;
  // Probability that a purchase follows the buyer's community structure;
  // otherwise the seller is drawn uniformly. 0 removes all planted
  // structure.
  double affinity = 0.85;
  // Zipf exponent of item popularity within each seller's inventory.
  double item_skew = 1.2;
  // Zipf exponent of seller popularity.
  double seller_skew = 0.9;
  // Zipf exponent of buyer activity (extra purchases beyond the first).
  double buyer_skew = 0.6;
  // Buyers weight sellers by exp(quality_preference * mean seller quality),
  // where quality lies in [-1, 1].
  double quality_preference = 2.0;
  // Probability that a structured purchase is in the buyer's primary
  // category rather than the community's other category.
  double primary_share = 0.85;
  // Standard deviation of rating noise, in raw scale points.
  double rating_noise = 0.6;
  // Fraction of sellers that also buy.
  double dual_role = 0.15;
  RatingScale scale{1.0, 5.0};
};

// Throws ConfigError for inconsistent specs (e.g. transactions without
// sellers, affinity outside [0, 1]).
void validate(const SynthSpec& spec);

// Deterministic per seed. Ratings are whole points on spec.scale and are
// stored normalized, so write_csv reproduces the raw values exactly.
std::vector<Transaction> generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

}  // namespace c2c
