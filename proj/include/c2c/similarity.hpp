#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "c2c/graph.hpp"

namespace c2c {

struct SimRankParams {
  double damping = 0.8;
  int max_iterations = 10;
  double tolerance = 1e-4;
};

// Throws ConfigError unless 0 < damping < 1, max_iterations >= 1 and
// tolerance > 0.
void validate(const SimRankParams& params);

// SimRank over purchase neighborhoods (the distinct sellers a user bought
// from). Only users with a non-empty neighborhood can have non-zero
// off-diagonal similarity, so values are materialized for that block only;
// every other off-diagonal pair reads as 0 and the diagonal is always 1.
class SimilarityTable {
 public:
  SimilarityTable() = default;

  double value(UserIx a, UserIx b) const;

  std::size_t user_count() const { return active_slot_.size(); }
  // Users with at least one purchase, ascending.
  const std::vector<UserIx>& active_users() const { return active_; }

  double damping() const { return damping_; }
  int iterations_run() const { return iterations_run_; }
  bool converged() const { return converged_; }

 private:
  friend SimilarityTable compute_simrank(const CommercialGraph&, const SimRankParams&, unsigned);
  friend SimilarityTable read_similarity(std::istream&, const CommercialGraph&);

  static constexpr std::uint32_t kInactive = UINT32_MAX;

  double block(std::uint32_t i, std::uint32_t j) const { return block_[std::size_t{i} * active_.size() + j]; }

  std::vector<std::uint32_t> active_slot_;  // per user: slot in active_, or kInactive
  std::vector<UserIx> active_;
  std::vector<double> block_;  // dense |active| x |active|, row-major
  double damping_ = 0.0;
  int iterations_run_ = 0;
  bool converged_ = false;
};

// Jacobi fixed-point iteration from the identity. Stops once the largest
// absolute change falls below the tolerance or after max_iterations.
// Rows are updated in parallel on `threads` workers with identical results
// for any thread count.
SimilarityTable compute_simrank(const CommercialGraph& g, const SimRankParams& params, unsigned threads = 1);

struct SimilarUser {
  UserIx user;
  double similarity;

  friend bool operator==(const SimilarUser&, const SimilarUser&) = default;
};

// The n most similar users to u, most similar first, ties by ascending id.
// Excludes u itself and zero-similarity users. Throws LookupError when u is
// not covered by the table.
std::vector<SimilarUser> top_n_similar(const SimilarityTable& table, UserIx u, std::size_t n);

struct CandidateSet {
  UserIx target;
  std::vector<SimilarUser> similar_users;
  // Ascending; never contains target or a user target already bought from.
  std::vector<UserIx> candidates;
};

// Sellers of the similar users that the target has not bought from yet.
CandidateSet candidate_sellers(const CommercialGraph& g, UserIx u, std::vector<SimilarUser> similar);

// Cache format: '#'-prefixed metadata lines followed by "u,v,value" rows
// for every non-zero pair u < v (ids ascending), values at 9 significant
// digits. Reading checks the graph fingerprint and throws SchemaError on
// mismatch.
void write_similarity(std::ostream& out, const SimilarityTable& table, const CommercialGraph& g);
SimilarityTable read_similarity(std::istream& in, const CommercialGraph& g);

// Order-independent digest of the graph's transactions; stored in caches.
std::uint64_t graph_fingerprint(const CommercialGraph& g);

}  // namespace c2c
