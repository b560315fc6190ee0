#include "c2c/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "c2c/error.hpp"
#include "c2c/format.hpp"

namespace c2c {

void validate(const FusionWeights& w) {
  for (double c : {w.alpha, w.beta, w.gamma}) {
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("fusion coefficient " + format_real(c) + " outside [0, 1]");
  }
  const double sum = w.alpha + w.beta + w.gamma;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("fusion coefficients must sum to 1, got alpha+beta+gamma = " + format_real(sum));
  }
}

double local_category_importance(const CommercialGraph& g, UserIx u, CategoryIx a) {
  if (!g.traded_in(u, a)) return 1.0;
  std::size_t shared = 0;
  for (UserIx v : g.neighbors(u)) shared += g.traded_in(v, a) ? 1 : 0;
  return shared == 0 ? 1.0 : static_cast<double>(shared);
}

namespace {

double traded_value(const CommercialGraph& g, std::span<const TxnIx> txns, CategoryIx a) {
  double sum = 0.0;
  for (TxnIx t : txns) {
    if (g.keys(t).category == a) sum += g.transaction(t).value();
  }
  return sum;
}

}  // namespace

double category_weight(const CommercialGraph& g, UserIx u, CategoryIx a) {
  return local_category_importance(g, u, a) * (traded_value(g, g.purchases(u), a) + traded_value(g, g.sales(u), a));
}

double CategoryProfile::importance(CategoryIx c) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), c,
                             [](const CategoryEntry& e, CategoryIx key) { return e.category < key; });
  return it != entries.end() && it->category == c ? it->local_importance : 1.0;
}

double CategoryProfile::total_weight() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.weight;
  return sum;
}

CategoryProfile category_profile(const CommercialGraph& g, UserIx u) {
  CategoryProfile p;
  p.owner = u;
  for (CategoryIx a : g.categories(u)) {
    double importance = local_category_importance(g, u, a);
    double value = traded_value(g, g.purchases(u), a) + traded_value(g, g.sales(u), a);
    p.entries.push_back({a, importance, importance * value});
  }
  return p;
}

double category_score(const CategoryProfile& u, const CategoryProfile& v) {
  // Shared weights are summed per side in the same order as the totals, so
  // identical category sets give exactly 1 and the ratio never exceeds it.
  double shared_u = 0.0, shared_v = 0.0;
  auto i = u.entries.begin();
  auto j = v.entries.begin();
  while (i != u.entries.end() && j != v.entries.end()) {
    if (i->category < j->category) {
      ++i;
    } else if (j->category < i->category) {
      ++j;
    } else {
      shared_u += i->weight;
      shared_v += j->weight;
      ++i;
      ++j;
    }
  }
  const double denom = u.total_weight() + v.total_weight();
  if (!(denom > 0.0)) return 0.0;
  return (shared_u + shared_v) / denom;
}

double reputation_score(const CommercialGraph& g, const CategoryProfile& viewer, UserIx v) {
  auto sales = g.sales(v);
  if (sales.empty()) throw std::logic_error("reputation requested for user '" + g.user_id(v) + "' with no sales");
  double sum = 0.0;
  for (TxnIx t : sales) {
    const auto& txn = g.transaction(t);
    sum += txn.ratings.mean() * txn.value() * viewer.importance(g.keys(t).category);
  }
  return sum / static_cast<double>(sales.size());
}

double reputation_score(const CommercialGraph& g, UserIx u, UserIx v) {
  return reputation_score(g, category_profile(g, u), v);
}

std::array<double, RatingVector::kComponents> mean_received_ratings(const CommercialGraph& g, UserIx seller) {
  std::array<double, RatingVector::kComponents> mean{};
  auto sales = g.sales(seller);
  if (sales.empty()) return mean;
  for (TxnIx t : sales) {
    auto r = g.transaction(t).ratings.as_array();
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= static_cast<double>(sales.size());
  return mean;
}

double cosine(const std::array<double, RatingVector::kComponents>& a,
              const std::array<double, RatingVector::kComponents>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    dot += a[j] * b[j];
    na += a[j] * a[j];
    nb += b[j] * b[j];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double rating_score(const CommercialGraph& g, UserIx u, UserIx v) {
  auto prior = g.sellers_of(u);
  if (prior.empty()) return 0.0;
  const auto mv = mean_received_ratings(g, v);
  double sum = 0.0;
  for (UserIx w : prior) sum += cosine(mv, mean_received_ratings(g, w));
  return sum / static_cast<double>(prior.size());
}

std::vector<ScoredCandidate> score_candidates(const CommercialGraph& g, UserIx u, const std::vector<UserIx>& candidates) {
  std::vector<ScoredCandidate> out;
  out.reserve(candidates.size());
  const auto target_profile = category_profile(g, u);
  for (UserIx v : candidates) {
    ScoredCandidate c;
    c.seller = v;
    c.raw.category = category_score(target_profile, category_profile(g, v));
    c.raw.reputation = reputation_score(g, target_profile, v);
    c.raw.rating = rating_score(g, u, v);
    out.push_back(c);
  }
  return out;
}

namespace {

template <typename Get, typename Set>
void min_max(std::vector<ScoredCandidate>& cs, Get get, Set set) {
  double lo = get(cs.front().raw);
  double hi = lo;
  for (const auto& c : cs) {
    lo = std::min(lo, get(c.raw));
    hi = std::max(hi, get(c.raw));
  }
  // Spreads at rounding-noise level count as no spread.
  const double span = hi - lo;
  const bool flat = span <= 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (auto& c : cs) set(c.normalized, flat ? 0.5 : std::clamp((get(c.raw) - lo) / span, 0.0, 1.0));
}

}  // namespace

std::vector<ScoredCandidate> normalize_scores(std::vector<ScoredCandidate> candidates) {
  if (candidates.empty()) return candidates;
  min_max(candidates, [](const ScoreTriple& s) { return s.category; }, [](ScoreTriple& s, double x) { s.category = x; });
  min_max(candidates, [](const ScoreTriple& s) { return s.reputation; }, [](ScoreTriple& s, double x) { s.reputation = x; });
  min_max(candidates, [](const ScoreTriple& s) { return s.rating; }, [](ScoreTriple& s, double x) { s.rating = x; });
  return candidates;
}

double total_score(const ScoredCandidate& c, const FusionWeights& w) {
  const auto& s = c.normalized;
  return std::clamp(w.alpha * s.category + w.beta * s.rating + w.gamma * s.reputation, 0.0, 1.0);
}

std::vector<ScoredCandidate> rank_scored(std::vector<ScoredCandidate> scored, const FusionWeights& w, std::size_t k) {
  validate(w);
  scored = normalize_scores(std::move(scored));
  for (auto& c : scored) c.total = total_score(c, w);
  std::sort(scored.begin(), scored.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.seller < b.seller;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

std::vector<ScoredCandidate> rank_candidates(const CommercialGraph& g, const SimilarityTable& table, UserIx u,
                                             std::size_t n, const FusionWeights& w, std::size_t k) {
  validate(w);
  auto set = candidate_sellers(g, u, top_n_similar(table, u, n));
  return rank_scored(score_candidates(g, u, set.candidates), w, k);
}

std::vector<UserIx> cold_start_candidates(const CommercialGraph& g, std::optional<UserIx> u, std::size_t k) {
  std::vector<UserIx> sellers;
  for (UserIx v = 0; v < g.user_count(); ++v) {
    if (g.sales_count(v) == 0) continue;
    if (u && (v == *u || g.has_sold_to(v, *u))) continue;
    sellers.push_back(v);
  }
  std::stable_sort(sellers.begin(), sellers.end(),
                   [&](UserIx a, UserIx b) { return g.sales_count(a) > g.sales_count(b); });
  if (sellers.size() > k) sellers.resize(k);
  return sellers;
}

}  // namespace c2c
