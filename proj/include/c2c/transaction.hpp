#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace c2c {

// Buyer feedback on one transaction. Components are stored normalized to
// [-1, +1]; ingestion performs the affine mapping from the raw scale.
struct RatingVector {
  static constexpr std::size_t kComponents = 4;

  double overall = 0.0;
  double quality = 0.0;
  double delivery = 0.0;
  double support = 0.0;

  std::array<double, kComponents> as_array() const { return {overall, quality, delivery, support}; }
  double mean() const { return (overall + quality + delivery + support) / kComponents; }

  friend bool operator==(const RatingVector&, const RatingVector&) = default;
};

// Linear map between a raw rating scale and [-1, +1].
struct RatingScale {
  double min = 1.0;
  double max = 5.0;

  double normalize(double raw) const { return 2.0 * (raw - min) / (max - min) - 1.0; }
  double denormalize(double normalized) const { return (normalized + 1.0) * (max - min) / 2.0 + min; }
  bool contains(double raw) const { return raw >= min && raw <= max; }
};

// One buyer-to-seller purchase. Identifiers are opaque strings.
struct Transaction {
  std::string id;
  std::string buyer;
  std::string seller;
  std::string item;
  std::string category;
  double price = 0.0;
  std::int64_t quantity = 1;
  RatingVector ratings;

  // Monetary value of the trade.
  double value() const { return price * static_cast<double>(quantity); }

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

}  // namespace c2c
