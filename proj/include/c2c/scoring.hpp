#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "c2c/graph.hpp"
#include "c2c/similarity.hpp"

namespace c2c {

// Convex fusion coefficients for the category, rating and reputation
// scores, in that order.
struct FusionWeights {
  double alpha = 1.0 / 3.0;  // category
  double beta = 1.0 / 3.0;   // rating
  double gamma = 1.0 / 3.0;  // reputation
};

// Throws ConfigError unless every coefficient is in [0, 1] and they sum to
// 1 within 1e-9.
void validate(const FusionWeights& w);

// Number of neighbors of u that also traded in category a, floored at 1.
double local_category_importance(const CommercialGraph& g, UserIx u, CategoryIx a);

// Local importance times the traded value (quantity x price) of u's
// purchases and sales in category a. Only meaningful for a in A(u).
double category_weight(const CommercialGraph& g, UserIx u, CategoryIx a);

struct CategoryEntry {
  CategoryIx category;
  double local_importance;
  double weight;
};

// Per-user category weights over the categories the user traded in.
struct CategoryProfile {
  UserIx owner = 0;
  std::vector<CategoryEntry> entries;  // ascending by category

  // Local importance of any category; 1 for categories the owner never
  // traded in.
  double importance(CategoryIx c) const;
  double total_weight() const;
};

CategoryProfile category_profile(const CommercialGraph& g, UserIx u);

// Weighted Jaccard overlap of two profiles, in [0, 1]. Zero when either the
// intersection or the denominator is empty.
double category_score(const CategoryProfile& u, const CategoryProfile& v);

// Reputation of seller v as seen by u: mean over v's sales of
// (mean rating) x (value) x (u's local importance of the sale's category).
// Throws std::logic_error when v has never sold.
double reputation_score(const CommercialGraph& g, const CategoryProfile& viewer, UserIx v);
double reputation_score(const CommercialGraph& g, UserIx u, UserIx v);

// Per-component average rating a seller received over all its sales; zero
// vector for non-sellers.
std::array<double, RatingVector::kComponents> mean_received_ratings(const CommercialGraph& g, UserIx seller);

// Cosine similarity; 0 when either vector has zero norm.
double cosine(const std::array<double, RatingVector::kComponents>& a,
              const std::array<double, RatingVector::kComponents>& b);

// Mean cosine between v's received ratings and those of each distinct
// seller u has bought from. 0 when u has no prior seller.
double rating_score(const CommercialGraph& g, UserIx u, UserIx v);

struct ScoreTriple {
  double category = 0.0;
  double reputation = 0.0;
  double rating = 0.0;

  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

struct ScoredCandidate {
  UserIx seller = 0;
  ScoreTriple raw;
  ScoreTriple normalized;
  double total = 0.0;

  friend bool operator==(const ScoredCandidate&, const ScoredCandidate&) = default;
};

// Raw scores of every candidate seller for target u.
std::vector<ScoredCandidate> score_candidates(const CommercialGraph& g, UserIx u, const std::vector<UserIx>& candidates);

// Min-max normalizes each raw score across the list independently. A score
// with no spread across the list maps to 0.5 for every candidate.
std::vector<ScoredCandidate> normalize_scores(std::vector<ScoredCandidate> candidates);

// alpha * category + beta * rating + gamma * reputation over the
// normalized scores.
double total_score(const ScoredCandidate& c, const FusionWeights& w);

// Normalize, fuse, sort by total descending (ties by ascending seller id)
// and keep the first k.
std::vector<ScoredCandidate> rank_scored(std::vector<ScoredCandidate> scored, const FusionWeights& w, std::size_t k);

// Full candidate-to-ranking pipeline for one target user.
std::vector<ScoredCandidate> rank_candidates(const CommercialGraph& g, const SimilarityTable& table, UserIx u,
                                             std::size_t n, const FusionWeights& w, std::size_t k);

// Top-k sellers by number of sales, ties by ascending id. Excludes the
// target and anyone it already bought from. `u` is empty for users the
// graph has never seen.
std::vector<UserIx> cold_start_candidates(const CommercialGraph& g, std::optional<UserIx> u, std::size_t k);

}  // namespace c2c
