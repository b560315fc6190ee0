#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "c2c/transaction.hpp"

namespace c2c {

// Dense indices assigned in ascending order of the opaque string ids, so
// comparing indices is the same as comparing ids.
using UserIx = std::uint32_t;
using ItemIx = std::uint32_t;
using CategoryIx = std::uint32_t;
using TxnIx = std::uint32_t;

// Interned endpoints of one transaction.
struct TxnKeys {
  UserIx buyer;
  UserIx seller;
  ItemIx item;
  CategoryIx category;
};

// Sorted, deduplicated string pool with reverse lookup.
class IdPool {
 public:
  IdPool() = default;
  explicit IdPool(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::string& name(std::uint32_t ix) const { return ids_[ix]; }
  std::optional<std::uint32_t> find(std::string_view id) const;
  const std::vector<std::string>& names() const { return ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

// Flat adjacency lists: row r occupies [offsets[r], offsets[r+1]).
template <typename T>
struct Csr {
  std::vector<std::uint32_t> offsets{0};
  std::vector<T> values;

  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(values).subspan(offsets[r], offsets[r + 1] - offsets[r]);
  }
};

// Immutable transaction multigraph. Edges point seller -> buyer: a user's
// in-edges are purchases and out-edges are sales.
class CommercialGraph {
 public:
  CommercialGraph() = default;

  // Transactions are put in ascending id order so the result does not
  // depend on input order.
  static CommercialGraph build(std::vector<Transaction> transactions);

  std::size_t user_count() const { return users_.size(); }
  std::size_t item_count() const { return items_.size(); }
  std::size_t category_count() const { return categories_.size(); }
  std::size_t transaction_count() const { return transactions_.size(); }

  const std::string& user_id(UserIx u) const { return users_.name(u); }
  const std::string& item_id(ItemIx i) const { return items_.name(i); }
  const std::string& category_id(CategoryIx c) const { return categories_.name(c); }

  std::optional<UserIx> find_user(std::string_view id) const { return users_.find(id); }
  std::optional<ItemIx> find_item(std::string_view id) const { return items_.find(id); }
  std::optional<CategoryIx> find_category(std::string_view id) const { return categories_.find(id); }
  // Throws LookupError naming the user.
  UserIx require_user(std::string_view id) const;

  const std::vector<Transaction>& transactions() const { return transactions_; }
  const Transaction& transaction(TxnIx t) const { return transactions_[t]; }
  const TxnKeys& keys(TxnIx t) const { return keys_[t]; }

  // In-edges of u, one entry per transaction.
  std::span<const TxnIx> purchases(UserIx u) const { return purchases_.row(u); }
  // Out-edges of u, one entry per transaction.
  std::span<const TxnIx> sales(UserIx u) const { return sales_.row(u); }
  // Distinct users u bought from, ascending.
  std::span<const UserIx> sellers_of(UserIx u) const { return sellers_of_.row(u); }
  // Distinct users who bought from u, ascending.
  std::span<const UserIx> buyers_of(UserIx u) const { return buyers_of_.row(u); }
  // Distinct users adjacent to u in either direction, ascending.
  std::span<const UserIx> neighbors(UserIx u) const { return neighbors_.row(u); }
  // Categories u bought or sold in, ascending.
  std::span<const CategoryIx> categories(UserIx u) const { return categories_of_.row(u); }

  bool traded_in(UserIx u, CategoryIx c) const;
  bool has_sold_to(UserIx seller, UserIx buyer) const;
  std::size_t sales_count(UserIx u) const { return sales(u).size(); }

 private:
  IdPool users_;
  IdPool items_;
  IdPool categories_;
  std::vector<Transaction> transactions_;
  std::vector<TxnKeys> keys_;
  Csr<TxnIx> purchases_;
  Csr<TxnIx> sales_;
  Csr<UserIx> sellers_of_;
  Csr<UserIx> buyers_of_;
  Csr<UserIx> neighbors_;
  Csr<CategoryIx> categories_of_;
};

struct GraphStats {
  std::size_t users = 0;
  std::size_t transactions = 0;
  // Distinct (seller, buyer) pairs.
  std::size_t edges = 0;
  // edges / (users * (users - 1)); 0 for fewer than two users.
  double density = 0.0;
  // Mean number of distinct in-neighbors (equivalently out-neighbors).
  double average_degree = 0.0;
  // Largest number of purchase transactions of one user.
  std::size_t max_in_degree = 0;
  // Largest number of sale transactions of one user.
  std::size_t max_out_degree = 0;
};

GraphStats graph_stats(const CommercialGraph& g);

}  // namespace c2c
