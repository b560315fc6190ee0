#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "c2c/graph.hpp"

namespace c2c {

// Sorted, duplicate-free set of items.
using Itemset = std::vector<ItemIx>;

struct AprioriParams {
  double min_support = 0.01;
  double min_confidence = 0.5;
  // Absolute floor on the number of supporting baskets.
  std::size_t min_count = 2;
};

// Throws ConfigError unless both thresholds lie in (0, 1].
void validate(const AprioriParams& params);

struct FrequentItemset {
  Itemset items;
  std::size_t count = 0;  // baskets containing all items

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

struct AssociationRule {
  Itemset antecedent;
  ItemIx consequent = 0;
  double support = 0.0;     // fraction of baskets with antecedent + consequent
  double confidence = 0.0;  // support(antecedent + consequent) / support(antecedent)

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

// Smallest basket count an itemset needs to be frequent.
std::size_t support_threshold(std::size_t basket_count, const AprioriParams& params);

// Level-wise mining with candidate pruning by downward closure. Output is
// ordered by itemset size, then lexicographically.
std::vector<FrequentItemset> frequent_itemsets(const std::vector<Itemset>& baskets, const AprioriParams& params);

// Single-consequent rules from every frequent itemset of size >= 2 that
// meet min_confidence. Ordered by antecedent, then consequent.
std::vector<AssociationRule> derive_rules(const std::vector<FrequentItemset>& itemsets, std::size_t basket_count,
                                          const AprioriParams& params);

// One basket per buyer: the distinct items the buyer purchased.
std::vector<Itemset> purchase_baskets(const CommercialGraph& g);

std::vector<AssociationRule> mine_rules(const CommercialGraph& g, const AprioriParams& params);

}  // namespace c2c
