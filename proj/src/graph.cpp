#include "c2c/graph.hpp"

#include <algorithm>

#include "c2c/error.hpp"

namespace c2c {

IdPool::IdPool(std::vector<std::string> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  lookup_.reserve(ids_.size());
  for (std::uint32_t i = 0; i < ids_.size(); ++i) lookup_.emplace(ids_[i], i);
}

std::optional<std::uint32_t> IdPool::find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

namespace {

template <typename T>
Csr<T> to_csr(std::vector<std::vector<T>>&& rows, bool dedup) {
  Csr<T> csr;
  csr.offsets.reserve(rows.size() + 1);
  for (auto& row : rows) {
    if (dedup) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    csr.values.insert(csr.values.end(), row.begin(), row.end());
    csr.offsets.push_back(static_cast<std::uint32_t>(csr.values.size()));
  }
  return csr;
}

}  // namespace

CommercialGraph CommercialGraph::build(std::vector<Transaction> transactions) {
  std::stable_sort(transactions.begin(), transactions.end(),
                   [](const Transaction& a, const Transaction& b) { return a.id < b.id; });

  CommercialGraph g;
  {
    std::vector<std::string> users, items, categories;
    users.reserve(2 * transactions.size());
    for (const auto& t : transactions) {
      users.push_back(t.buyer);
      users.push_back(t.seller);
      items.push_back(t.item);
      categories.push_back(t.category);
    }
    g.users_ = IdPool(std::move(users));
    g.items_ = IdPool(std::move(items));
    g.categories_ = IdPool(std::move(categories));
  }

  const std::size_t n = g.users_.size();
  std::vector<std::vector<TxnIx>> purchases(n), sales(n);
  std::vector<std::vector<UserIx>> sellers_of(n), buyers_of(n), neighbors(n);
  std::vector<std::vector<CategoryIx>> categories_of(n);

  g.keys_.reserve(transactions.size());
  for (TxnIx t = 0; t < transactions.size(); ++t) {
    const auto& txn = transactions[t];
    TxnKeys k{*g.users_.find(txn.buyer), *g.users_.find(txn.seller), *g.items_.find(txn.item),
              *g.categories_.find(txn.category)};
    g.keys_.push_back(k);
    purchases[k.buyer].push_back(t);
    sales[k.seller].push_back(t);
    sellers_of[k.buyer].push_back(k.seller);
    buyers_of[k.seller].push_back(k.buyer);
    neighbors[k.buyer].push_back(k.seller);
    neighbors[k.seller].push_back(k.buyer);
    categories_of[k.buyer].push_back(k.category);
    categories_of[k.seller].push_back(k.category);
  }
  g.transactions_ = std::move(transactions);

  g.purchases_ = to_csr(std::move(purchases), false);
  g.sales_ = to_csr(std::move(sales), false);
  g.sellers_of_ = to_csr(std::move(sellers_of), true);
  g.buyers_of_ = to_csr(std::move(buyers_of), true);
  g.neighbors_ = to_csr(std::move(neighbors), true);
  g.categories_of_ = to_csr(std::move(categories_of), true);
  return g;
}

UserIx CommercialGraph::require_user(std::string_view id) const {
  auto u = find_user(id);
  if (!u) throw LookupError("unknown user '" + std::string(id) + "'");
  return *u;
}

bool CommercialGraph::traded_in(UserIx u, CategoryIx c) const {
  auto cats = categories(u);
  return std::binary_search(cats.begin(), cats.end(), c);
}

bool CommercialGraph::has_sold_to(UserIx seller, UserIx buyer) const {
  auto sellers = sellers_of(buyer);
  return std::binary_search(sellers.begin(), sellers.end(), seller);
}

GraphStats graph_stats(const CommercialGraph& g) {
  GraphStats s;
  s.users = g.user_count();
  s.transactions = g.transaction_count();
  for (UserIx u = 0; u < s.users; ++u) {
    s.edges += g.sellers_of(u).size();
    s.max_in_degree = std::max(s.max_in_degree, g.purchases(u).size());
    s.max_out_degree = std::max(s.max_out_degree, g.sales(u).size());
  }
  if (s.users >= 2) {
    s.density = static_cast<double>(s.edges) / (static_cast<double>(s.users) * static_cast<double>(s.users - 1));
  }
  if (s.users > 0) s.average_degree = static_cast<double>(s.edges) / static_cast<double>(s.users);
  return s;
}

}  // namespace c2c
