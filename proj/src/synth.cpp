#include "c2c/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "c2c/error.hpp"
#include "c2c/format.hpp"
#include "c2c/rng.hpp"

namespace c2c {

void validate(const SynthSpec& spec) {
  if (spec.transactions > 0 && (spec.sellers == 0 || spec.buyers + spec.sellers < 2)) {
    throw ConfigError("synthetic spec has transactions but no sellers or buyers");
  }
  if (spec.transactions > 0 && spec.buyers == 0 && spec.dual_role <= 0.0) {
    throw ConfigError("synthetic spec has transactions but nobody buys");
  }
  if (spec.categories == 0) throw ConfigError("synthetic spec needs at least one category");
  if (spec.communities == 0) throw ConfigError("synthetic spec needs at least one community");
  if (spec.items_per_category == 0 || spec.items_per_seller == 0) {
    throw ConfigError("synthetic spec needs at least one item per category and per seller");
  }
  if (!(spec.affinity >= 0.0 && spec.affinity <= 1.0)) throw ConfigError("affinity must lie in [0, 1]");
  if (!(spec.dual_role >= 0.0 && spec.dual_role <= 1.0)) throw ConfigError("dual_role must lie in [0, 1]");
  for (double skew : {spec.item_skew, spec.seller_skew, spec.buyer_skew}) {
    if (!(skew >= 0.0)) throw ConfigError("skew exponents must be non-negative");
  }
  if (!(spec.primary_share >= 0.0 && spec.primary_share <= 1.0)) throw ConfigError("primary_share must lie in [0, 1]");
  if (!std::isfinite(spec.quality_preference)) throw ConfigError("quality_preference must be finite");
  if (!(spec.rating_noise >= 0.0)) throw ConfigError("rating_noise must be non-negative");
  if (!(spec.scale.min < spec.scale.max)) throw ConfigError("rating scale requires min < max");
}

namespace {

std::string padded(char prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%0*zu", prefix, width, value);
  return buf;
}

int width_for(std::size_t count) {
  int w = 1;
  for (std::size_t x = count; x >= 10; x /= 10) ++w;
  return w;
}

std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
  return w;
}

struct Community {
  std::array<std::size_t, 2> categories;
  std::array<double, RatingVector::kComponents> style;
  std::vector<std::size_t> sellers;
};

struct SellerProfile {
  std::string id;
  std::size_t community;
  std::size_t category;
  double popularity;
  std::array<double, RatingVector::kComponents> quality;
  std::vector<std::size_t> inventory;  // catalog indices, most popular first
};

struct BuyerProfile {
  std::string id;
  std::size_t community;
  std::size_t primary;  // index into the community's categories
  std::size_t purchases;
};

}  // namespace

std::vector<Transaction> generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
  validate(spec);
  Rng rng(derive_seed(seed, "synth"));

  std::vector<Community> communities(spec.communities);
  for (auto& c : communities) {
    c.categories[0] = uniform_index(rng, spec.categories);
    c.categories[1] = c.categories[0];
    if (spec.categories > 1) {
      while (c.categories[1] == c.categories[0]) c.categories[1] = uniform_index(rng, spec.categories);
    }
    for (double& s : c.style) s = 2.0 * uniform_real(rng) - 1.0;
  }

  // Catalog prices and shared catalog popularity.
  std::vector<std::vector<double>> prices(spec.categories, std::vector<double>(spec.items_per_category));
  for (auto& row : prices) {
    for (double& p : row) p = std::round(std::exp(3.0 + 0.8 * standard_normal(rng)) * 100.0) / 100.0;
  }
  const auto catalog_weights = zipf_weights(spec.items_per_category, 1.0);

  std::vector<std::size_t> popularity_rank(spec.sellers);
  for (std::size_t i = 0; i < spec.sellers; ++i) popularity_rank[i] = i;
  shuffle(popularity_rank, rng);
  const auto seller_pop = zipf_weights(spec.sellers, spec.seller_skew);

  const int seller_width = width_for(spec.sellers);
  std::vector<SellerProfile> sellers(spec.sellers);
  for (std::size_t j = 0; j < spec.sellers; ++j) {
    auto& s = sellers[j];
    s.id = padded('s', j + 1, seller_width);
    s.community = j % spec.communities;
    auto& home = communities[s.community];
    s.category = home.categories[(j / spec.communities) % 2];
    double mean_quality = 0.0;
    for (std::size_t r = 0; r < s.quality.size(); ++r) {
      s.quality[r] = std::clamp(home.style[r] + 0.25 * standard_normal(rng), -1.0, 1.0);
      mean_quality += s.quality[r] / static_cast<double>(s.quality.size());
    }
    s.popularity = seller_pop[popularity_rank[j]] * std::exp(spec.quality_preference * mean_quality);
    auto weights = catalog_weights;
    const std::size_t stock = std::min(spec.items_per_seller, spec.items_per_category);
    while (s.inventory.size() < stock) {
      std::size_t pick = weighted_index(rng, weights);
      weights[pick] = 0.0;
      s.inventory.push_back(pick);
    }
    home.sellers.push_back(j);
  }

  // Buyers: plain buyers plus the dual-role sellers.
  const int buyer_width = width_for(spec.buyers);
  std::vector<BuyerProfile> buyers;
  for (std::size_t b = 0; b < spec.buyers; ++b) {
    buyers.push_back({padded('b', b + 1, buyer_width), uniform_index(rng, spec.communities), uniform_index(rng, 2), 0});
  }
  for (std::size_t j = 0; j < spec.sellers; ++j) {
    if (uniform_real(rng) < spec.dual_role) {
      buyers.push_back({sellers[j].id, uniform_index(rng, spec.communities), uniform_index(rng, 2), 0});
    }
  }

  // Every buyer makes one purchase while transactions last; the remainder
  // goes to a Zipf-skewed subset of active buyers.
  std::vector<std::size_t> order(buyers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);
  const std::size_t base = std::min(spec.transactions, buyers.size());
  for (std::size_t i = 0; i < base; ++i) buyers[order[i]].purchases = 1;
  if (spec.transactions > base && !buyers.empty()) {
    const auto activity = zipf_weights(buyers.size(), spec.buyer_skew);
    for (std::size_t extra = base; extra < spec.transactions; ++extra) {
      buyers[order[weighted_index(rng, activity)]].purchases += 1;
    }
  }

  const double mid = (spec.scale.min + spec.scale.max) / 2.0;
  const double half = (spec.scale.max - spec.scale.min) / 2.0;
  auto raw_rating = [&](double quality) {
    double raw = std::round(mid + half * quality + spec.rating_noise * standard_normal(rng));
    return std::clamp(raw, std::ceil(spec.scale.min), std::floor(spec.scale.max));
  };

  std::vector<Transaction> out;
  out.reserve(spec.transactions);
  for (const auto& buyer : buyers) {
    const auto& home = communities[buyer.community];
    for (std::size_t p = 0; p < buyer.purchases; ++p) {
      std::size_t seller = 0;
      bool picked = false;
      if (uniform_real(rng) < spec.affinity && !home.sellers.empty()) {
        const std::size_t want = home.categories[uniform_real(rng) < spec.primary_share ? buyer.primary : 1 - buyer.primary];
        std::vector<double> w;
        for (std::size_t j : home.sellers) w.push_back(sellers[j].category == want ? sellers[j].popularity : 0.0);
        seller = home.sellers[weighted_index(rng, w)];
        picked = true;
      }
      if (!picked) seller = uniform_index(rng, spec.sellers);
      if (sellers[seller].id == buyer.id) seller = (seller + 1) % spec.sellers;
      if (sellers[seller].id == buyer.id) continue;  // single-seller market, buyer is that seller

      const auto& s = sellers[seller];
      const auto item_weights = zipf_weights(s.inventory.size(), spec.item_skew);
      const std::size_t item = s.inventory[weighted_index(rng, item_weights)];

      Transaction t;
      t.buyer = buyer.id;
      t.seller = s.id;
      t.category = padded('c', s.category + 1, width_for(spec.categories));
      t.item = t.category + "-i" + std::to_string(item + 1);
      t.price = prices[s.category][item];
      const double q = uniform_real(rng);
      t.quantity = q < 0.85 ? 1 : (q < 0.95 ? 2 : 3);
      t.ratings.overall = spec.scale.normalize(raw_rating(s.quality[0]));
      t.ratings.quality = spec.scale.normalize(raw_rating(s.quality[1]));
      t.ratings.delivery = spec.scale.normalize(raw_rating(s.quality[2]));
      t.ratings.support = spec.scale.normalize(raw_rating(s.quality[3]));
      out.push_back(std::move(t));
    }
  }

  shuffle(out, rng);
  const int txn_width = std::max(6, width_for(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = padded('t', i + 1, txn_width);
  return out;
}

}  // namespace c2c
