#include "c2c/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "c2c/error.hpp"
#include "c2c/format.hpp"

namespace c2c {

void validate(const AprioriParams& params) {
  if (!(params.min_support > 0.0 && params.min_support <= 1.0)) {
    throw ConfigError("min_support must lie in (0, 1], got " + format_real(params.min_support));
  }
  if (!(params.min_confidence > 0.0 && params.min_confidence <= 1.0)) {
    throw ConfigError("min_confidence must lie in (0, 1], got " + format_real(params.min_confidence));
  }
}

std::size_t support_threshold(std::size_t basket_count, const AprioriParams& params) {
  const double relative = std::ceil(params.min_support * static_cast<double>(basket_count) - 1e-9);
  return std::max<std::size_t>({static_cast<std::size_t>(std::max(relative, 0.0)), params.min_count, 1});
}

namespace {

std::size_t count_containing(const std::vector<Itemset>& baskets, const Itemset& items) {
  std::size_t count = 0;
  for (const auto& b : baskets) {
    if (std::includes(b.begin(), b.end(), items.begin(), items.end())) ++count;
  }
  return count;
}

}  // namespace

std::vector<FrequentItemset> frequent_itemsets(const std::vector<Itemset>& baskets, const AprioriParams& params) {
  validate(params);
  const std::size_t threshold = support_threshold(baskets.size(), params);
  std::vector<FrequentItemset> result;

  std::map<ItemIx, std::size_t> singles;
  for (const auto& b : baskets) {
    for (ItemIx i : b) ++singles[i];
  }
  std::vector<FrequentItemset> level;
  for (auto [item, count] : singles) {
    if (count >= threshold) level.push_back({{item}, count});
  }

  while (!level.empty()) {
    result.insert(result.end(), level.begin(), level.end());

    std::set<Itemset> frequent;
    for (const auto& f : level) frequent.insert(f.items);

    // Join itemsets that share every item but the last; level is sorted
    // lexicographically so joinable sets are contiguous.
    std::vector<FrequentItemset> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto& a = level[i].items;
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const auto& b = level[j].items;
        if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
        Itemset candidate = a;
        candidate.push_back(b.back());

        bool closed = true;
        Itemset subset(candidate.size() - 1);
        for (std::size_t drop = 0; closed && drop + 2 < candidate.size(); ++drop) {
          std::copy(candidate.begin(), candidate.begin() + static_cast<std::ptrdiff_t>(drop), subset.begin());
          std::copy(candidate.begin() + static_cast<std::ptrdiff_t>(drop) + 1, candidate.end(),
                    subset.begin() + static_cast<std::ptrdiff_t>(drop));
          closed = frequent.contains(subset);
        }
        if (!closed) continue;

        std::size_t count = count_containing(baskets, candidate);
        if (count >= threshold) next.push_back({std::move(candidate), count});
      }
    }
    level = std::move(next);
  }
  return result;
}

std::vector<AssociationRule> derive_rules(const std::vector<FrequentItemset>& itemsets, std::size_t basket_count,
                                          const AprioriParams& params) {
  validate(params);
  std::map<Itemset, std::size_t> counts;
  for (const auto& f : itemsets) counts.emplace(f.items, f.count);

  std::vector<AssociationRule> rules;
  if (basket_count == 0) return rules;
  for (const auto& f : itemsets) {
    if (f.items.size() < 2) continue;
    for (std::size_t k = 0; k < f.items.size(); ++k) {
      Itemset antecedent;
      antecedent.reserve(f.items.size() - 1);
      for (std::size_t i = 0; i < f.items.size(); ++i) {
        if (i != k) antecedent.push_back(f.items[i]);
      }
      // Downward closure guarantees the antecedent was counted.
      const std::size_t antecedent_count = counts.at(antecedent);
      const double confidence = static_cast<double>(f.count) / static_cast<double>(antecedent_count);
      if (confidence + 1e-12 < params.min_confidence) continue;
      rules.push_back({std::move(antecedent), f.items[k],
                       static_cast<double>(f.count) / static_cast<double>(basket_count), confidence});
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

std::vector<Itemset> purchase_baskets(const CommercialGraph& g) {
  std::vector<Itemset> baskets;
  for (UserIx u = 0; u < g.user_count(); ++u) {
    auto purchases = g.purchases(u);
    if (purchases.empty()) continue;
    Itemset basket;
    basket.reserve(purchases.size());
    for (TxnIx t : purchases) basket.push_back(g.keys(t).item);
    std::sort(basket.begin(), basket.end());
    basket.erase(std::unique(basket.begin(), basket.end()), basket.end());
    baskets.push_back(std::move(basket));
  }
  return baskets;
}

std::vector<AssociationRule> mine_rules(const CommercialGraph& g, const AprioriParams& params) {
  auto baskets = purchase_baskets(g);
  return derive_rules(frequent_itemsets(baskets, params), baskets.size(), params);
}

}  // namespace c2c
