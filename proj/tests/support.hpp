#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance binary. Oracles deliberately avoid the library's internals:
// they work from raw edge or basket lists with the plainest possible loops.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "c2c/apriori.hpp"
#include "c2c/graph.hpp"
#include "c2c/transaction.hpp"

namespace c2c::testing {

inline RatingVector uniform_rating(double r) { return {r, r, r, r}; }

inline Transaction trade(std::string id, std::string seller, std::string buyer, std::string item = "x",
                         std::string category = "c", double price = 1.0, std::int64_t quantity = 1,
                         RatingVector ratings = {}) {
  Transaction t;
  t.id = std::move(id);
  t.seller = std::move(seller);
  t.buyer = std::move(buyer);
  t.item = std::move(item);
  t.category = std::move(category);
  t.price = price;
  t.quantity = quantity;
  t.ratings = ratings;
  return t;
}

// Sequential ids keep fixtures short: trades({{"s1","b1"},{"s1","b2"}}).
inline std::vector<Transaction> trades(const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<Transaction> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out.push_back(trade("t" + std::to_string(1000 + i), edges[i].first, edges[i].second));
  }
  return out;
}

inline std::string node_name(int v) { return "n" + std::to_string(v); }

// Random directed graph over `nodes` vertices, each ordered pair (no loops)
// an edge with probability p. Edges are (seller, buyer).
inline std::vector<std::pair<int, int>> random_digraph(std::mt19937_64& rng, int nodes, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < nodes; ++a) {
    for (int b = 0; b < nodes; ++b) {
      if (a != b && coin(rng)) edges.emplace_back(a, b);
    }
  }
  return edges;
}

inline std::vector<Transaction> digraph_trades(const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(node_name(a), node_name(b));
  return trades(named);
}

// Dense SimRank straight from the recurrence: S_0 = I, then
// S_{k+1}(a,b) = C / (|I(a)||I(b)|) * sum S_k(i,j) for a != b.
// Returns a nodes x nodes matrix indexed by raw vertex number.
inline std::vector<std::vector<double>> simrank_oracle(int nodes, const std::vector<std::pair<int, int>>& edges,
                                                       double c, int iterations) {
  std::vector<std::set<int>> in(nodes);
  for (auto [seller, buyer] : edges) in[buyer].insert(seller);
  std::vector<std::vector<double>> s(nodes, std::vector<double>(nodes, 0.0));
  for (int a = 0; a < nodes; ++a) s[a][a] = 1.0;
  for (int it = 0; it < iterations; ++it) {
    auto next = s;
    for (int a = 0; a < nodes; ++a) {
      for (int b = 0; b < nodes; ++b) {
        if (a == b) continue;
        if (in[a].empty() || in[b].empty()) {
          next[a][b] = 0.0;
          continue;
        }
        double sum = 0.0;
        for (int i : in[a]) {
          for (int j : in[b]) sum += s[i][j];
        }
        next[a][b] = c * sum / static_cast<double>(in[a].size() * in[b].size());
      }
    }
    s = std::move(next);
  }
  return s;
}

struct OracleItemset {
  Itemset items;
  std::size_t count;
};

struct OracleRule {
  Itemset antecedent;
  ItemIx consequent;
  double support;
  double confidence;
};

inline std::size_t oracle_count(const std::vector<Itemset>& baskets, const Itemset& items) {
  std::size_t n = 0;
  for (const auto& b : baskets) {
    bool all = true;
    for (ItemIx i : items) all = all && std::find(b.begin(), b.end(), i) != b.end();
    n += all ? 1 : 0;
  }
  return n;
}

// Exhaustive enumeration of every non-empty subset of the item universe.
inline std::vector<OracleItemset> oracle_frequent(const std::vector<Itemset>& baskets, const AprioriParams& p) {
  std::set<ItemIx> universe;
  for (const auto& b : baskets) universe.insert(b.begin(), b.end());
  const std::vector<ItemIx> items(universe.begin(), universe.end());
  const double n = static_cast<double>(baskets.size());
  std::vector<OracleItemset> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << items.size()); ++mask) {
    Itemset set;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (mask >> i & 1) set.push_back(items[i]);
    }
    const std::size_t count = oracle_count(baskets, set);
    if (count == 0) continue;
    if (static_cast<double>(count) >= p.min_support * n - 1e-9 && count >= p.min_count) {
      out.push_back({set, count});
    }
  }
  std::sort(out.begin(), out.end(), [](const OracleItemset& a, const OracleItemset& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return out;
}

inline std::vector<OracleRule> oracle_rules(const std::vector<Itemset>& baskets, const AprioriParams& p) {
  std::vector<OracleRule> out;
  const double n = static_cast<double>(baskets.size());
  for (const auto& f : oracle_frequent(baskets, p)) {
    if (f.items.size() < 2) continue;
    for (ItemIx y : f.items) {
      Itemset x;
      for (ItemIx i : f.items) {
        if (i != y) x.push_back(i);
      }
      const double confidence = static_cast<double>(f.count) / static_cast<double>(oracle_count(baskets, x));
      if (confidence >= p.min_confidence - 1e-12) {
        out.push_back({x, y, static_cast<double>(f.count) / n, confidence});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const OracleRule& a, const OracleRule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return out;
}

// Random basket collection over at most `max_items` items.
inline std::vector<Itemset> random_baskets(std::mt19937_64& rng, std::size_t max_items, std::size_t max_baskets) {
  std::uniform_int_distribution<std::size_t> n_items(1, max_items);
  std::uniform_int_distribution<std::size_t> n_baskets(1, max_baskets);
  const std::size_t items = n_items(rng);
  const std::size_t baskets = n_baskets(rng);
  std::uniform_real_distribution<double> density(0.15, 0.6);
  const double d = density(rng);
  std::bernoulli_distribution coin(d);
  std::vector<Itemset> out;
  for (std::size_t b = 0; b < baskets; ++b) {
    Itemset basket;
    for (std::size_t i = 0; i < items; ++i) {
      if (coin(rng)) basket.push_back(static_cast<ItemIx>(i));
    }
    if (basket.empty()) basket.push_back(static_cast<ItemIx>(b % items));
    out.push_back(basket);
  }
  return out;
}

}  // namespace c2c::testing
