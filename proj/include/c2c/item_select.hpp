#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "c2c/apriori.hpp"
#include "c2c/graph.hpp"
#include "c2c/scoring.hpp"

namespace c2c {

enum class ItemMethod { best_selling, random, rules };

// How an entry's item was chosen.
enum class SelectionTag { best_selling, random, rule, random_fallback };

std::string_view to_string(ItemMethod m);
std::string_view to_string(SelectionTag t);
// Throws ConfigError on an unknown name.
ItemMethod parse_item_method(std::string_view name);

// Items a seller has sold before, ascending.
std::vector<ItemIx> seller_inventory(const CommercialGraph& g, UserIx v);

// Item with the largest quantity sold by v itself; ties by ascending id.
// Throws LookupError when v never sold anything.
ItemIx select_best_selling(const CommercialGraph& g, UserIx v);

// Per-seller stream seed: derive_seed(run_seed, "item", {hash(seller id)}).
std::uint64_t item_seed(std::uint64_t run_seed, std::string_view seller_id);

// Uniform pick from a non-empty inventory with the given stream seed.
ItemIx random_pick(const std::vector<ItemIx>& inventory, std::uint64_t stream_seed);

// Uniform pick from v's inventory, reproducible from (run_seed, v).
ItemIx select_random(const CommercialGraph& g, UserIx v, std::uint64_t run_seed);

struct ItemChoice {
  ItemIx item;
  SelectionTag tag;
};

// Consequent of the strongest applicable rule (antecedent within the
// buyer's history, consequent in stock): highest confidence, then highest
// support, then ascending item id. Without an applicable rule, falls back to
// random_pick(inventory, stream_seed).
ItemChoice select_by_rules(const std::vector<AssociationRule>& rules, const std::vector<ItemIx>& history,
                           const std::vector<ItemIx>& inventory, std::uint64_t stream_seed);

// Items u has purchased, ascending.
std::vector<ItemIx> purchase_history(const CommercialGraph& g, UserIx u);

struct ItemSelectionParams {
  ItemMethod method = ItemMethod::best_selling;
  std::uint64_t seed = 0;
  // Required for ItemMethod::rules; may be empty.
  const std::vector<AssociationRule>* rules = nullptr;
};

struct RecommendationEntry {
  UserIx seller;
  ItemIx item;
  double total_score;
  SelectionTag tag;

  friend bool operator==(const RecommendationEntry&, const RecommendationEntry&) = default;
};

struct Recommendation {
  std::optional<UserIx> target;
  std::vector<RecommendationEntry> entries;  // ranking order, one per seller
  std::size_t skipped_sellers = 0;           // ranked sellers without inventory
  bool cold_start = false;
};

// One item per ranked seller, keeping the ranking order.
Recommendation build_recommendations(const CommercialGraph& g, const std::vector<ScoredCandidate>& ranked,
                                     std::optional<UserIx> u, const ItemSelectionParams& params);

}  // namespace c2c
