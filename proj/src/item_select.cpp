#include "c2c/item_select.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "c2c/error.hpp"
#include "c2c/rng.hpp"

namespace c2c {

std::string_view to_string(ItemMethod m) {
  switch (m) {
    case ItemMethod::best_selling: return "best_selling";
    case ItemMethod::random: return "random";
    case ItemMethod::rules: return "rules";
  }
  return "unknown";
}

std::string_view to_string(SelectionTag t) {
  switch (t) {
    case SelectionTag::best_selling: return "best_selling";
    case SelectionTag::random: return "random";
    case SelectionTag::rule: return "rule";
    case SelectionTag::random_fallback: return "random_fallback";
  }
  return "unknown";
}

ItemMethod parse_item_method(std::string_view name) {
  if (name == "best_selling" || name == "best-selling") return ItemMethod::best_selling;
  if (name == "random") return ItemMethod::random;
  if (name == "rules") return ItemMethod::rules;
  throw ConfigError("unknown item method '" + std::string(name) + "' (expected best_selling, random or rules)");
}

std::vector<ItemIx> seller_inventory(const CommercialGraph& g, UserIx v) {
  std::vector<ItemIx> items;
  for (TxnIx t : g.sales(v)) items.push_back(g.keys(t).item);
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

ItemIx select_best_selling(const CommercialGraph& g, UserIx v) {
  std::map<ItemIx, std::int64_t> sold;
  for (TxnIx t : g.sales(v)) sold[g.keys(t).item] += g.transaction(t).quantity;
  if (sold.empty()) throw LookupError("seller '" + g.user_id(v) + "' has no inventory");
  auto best = sold.begin();
  for (auto it = sold.begin(); it != sold.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

std::uint64_t item_seed(std::uint64_t run_seed, std::string_view seller_id) {
  return derive_seed(run_seed, "item", {hash_string(seller_id)});
}

ItemIx random_pick(const std::vector<ItemIx>& inventory, std::uint64_t stream_seed) {
  if (inventory.empty()) throw LookupError("cannot pick from an empty inventory");
  Rng rng(stream_seed);
  return inventory[uniform_index(rng, inventory.size())];
}

ItemIx select_random(const CommercialGraph& g, UserIx v, std::uint64_t run_seed) {
  auto inventory = seller_inventory(g, v);
  if (inventory.empty()) throw LookupError("seller '" + g.user_id(v) + "' has no inventory");
  return random_pick(inventory, item_seed(run_seed, g.user_id(v)));
}

ItemChoice select_by_rules(const std::vector<AssociationRule>& rules, const std::vector<ItemIx>& history,
                           const std::vector<ItemIx>& inventory, std::uint64_t stream_seed) {
  if (inventory.empty()) throw LookupError("cannot pick from an empty inventory");
  const AssociationRule* best = nullptr;
  for (const auto& r : rules) {
    if (!std::binary_search(inventory.begin(), inventory.end(), r.consequent)) continue;
    if (!std::includes(history.begin(), history.end(), r.antecedent.begin(), r.antecedent.end())) continue;
    if (best == nullptr || r.confidence > best->confidence ||
        (r.confidence == best->confidence &&
         (r.support > best->support || (r.support == best->support && r.consequent < best->consequent)))) {
      best = &r;
    }
  }
  if (best != nullptr) return {best->consequent, SelectionTag::rule};
  return {random_pick(inventory, stream_seed), SelectionTag::random_fallback};
}

std::vector<ItemIx> purchase_history(const CommercialGraph& g, UserIx u) {
  std::vector<ItemIx> items;
  for (TxnIx t : g.purchases(u)) items.push_back(g.keys(t).item);
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

Recommendation build_recommendations(const CommercialGraph& g, const std::vector<ScoredCandidate>& ranked,
                                     std::optional<UserIx> u, const ItemSelectionParams& params) {
  Recommendation rec;
  rec.target = u;
  if (params.method == ItemMethod::rules && params.rules == nullptr) {
    throw ConfigError("rules item selection requires mined rules");
  }
  std::vector<ItemIx> history;
  if (u && params.method == ItemMethod::rules) history = purchase_history(g, *u);

  for (const auto& c : ranked) {
    auto inventory = seller_inventory(g, c.seller);
    if (inventory.empty()) {
      ++rec.skipped_sellers;
      continue;
    }
    const auto seed = item_seed(params.seed, g.user_id(c.seller));
    ItemChoice choice{};
    switch (params.method) {
      case ItemMethod::best_selling:
        choice = {select_best_selling(g, c.seller), SelectionTag::best_selling};
        break;
      case ItemMethod::random:
        choice = {random_pick(inventory, seed), SelectionTag::random};
        break;
      case ItemMethod::rules:
        choice = select_by_rules(*params.rules, history, inventory, seed);
        break;
    }
    rec.entries.push_back({c.seller, choice.item, c.total, choice.tag});
  }
  return rec;
}

}  // namespace c2c
