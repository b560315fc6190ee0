#include "c2c/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "c2c/csv_ingest.hpp"
#include "c2c/error.hpp"
#include "c2c/format.hpp"
#include "c2c/parallel.hpp"
#include "c2c/rng.hpp"

namespace c2c {

void validate(const SimRankParams& params) {
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw ConfigError("simrank damping must lie in (0, 1), got " + format_real(params.damping));
  }
  if (params.max_iterations < 1) throw ConfigError("simrank max_iterations must be at least 1");
  if (!(params.tolerance > 0.0)) throw ConfigError("simrank tolerance must be positive");
}

double SimilarityTable::value(UserIx a, UserIx b) const {
  if (a == b) return 1.0;
  if (a >= active_slot_.size() || b >= active_slot_.size()) return 0.0;
  const auto i = active_slot_[a];
  const auto j = active_slot_[b];
  if (i == kInactive || j == kInactive) return 0.0;
  return block(i, j);
}

SimilarityTable compute_simrank(const CommercialGraph& g, const SimRankParams& params, unsigned threads) {
  validate(params);

  SimilarityTable table;
  table.damping_ = params.damping;
  const std::size_t n = g.user_count();
  table.active_slot_.assign(n, SimilarityTable::kInactive);
  for (UserIx u = 0; u < n; ++u) {
    if (!g.sellers_of(u).empty()) {
      table.active_slot_[u] = static_cast<std::uint32_t>(table.active_.size());
      table.active_.push_back(u);
    }
  }
  const std::size_t k = table.active_.size();

  // Users that occur in somebody's purchase neighborhood.
  std::vector<UserIx> sellers;
  std::vector<std::uint32_t> seller_slot(n, SimilarityTable::kInactive);
  for (UserIx u = 0; u < n; ++u) {
    if (!g.buyers_of(u).empty()) {
      seller_slot[u] = static_cast<std::uint32_t>(sellers.size());
      sellers.push_back(u);
    }
  }

  std::vector<double> current(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) current[i * k + i] = 1.0;
  std::vector<double> next(k * k, 0.0);
  // partial[a][v] = mean over b in I(v) of S(a, b), for a among sellers.
  std::vector<double> partial(sellers.size() * k, 0.0);

  auto prev_value = [&](UserIx a, UserIx b) -> double {
    if (a == b) return 1.0;
    const auto i = table.active_slot_[a];
    const auto j = table.active_slot_[b];
    if (i == SimilarityTable::kInactive || j == SimilarityTable::kInactive) return 0.0;
    return current[std::size_t{i} * k + j];
  };

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    parallel_for(sellers.size(), threads, [&](std::size_t ai) {
      const UserIx a = sellers[ai];
      double* row = &partial[ai * k];
      for (std::size_t vi = 0; vi < k; ++vi) {
        auto in_v = g.sellers_of(table.active_[vi]);
        double sum = 0.0;
        for (UserIx b : in_v) sum += prev_value(a, b);
        row[vi] = sum / static_cast<double>(in_v.size());
      }
    });

    // Only the upper triangle is computed and mirrored, so the table is
    // exactly symmetric.
    parallel_for(k, threads, [&](std::size_t ui) {
      auto in_u = g.sellers_of(table.active_[ui]);
      const double scale = params.damping / static_cast<double>(in_u.size());
      next[ui * k + ui] = 1.0;
      for (std::size_t vi = ui + 1; vi < k; ++vi) {
        double sum = 0.0;
        for (UserIx a : in_u) sum += partial[std::size_t{seller_slot[a]} * k + vi];
        next[ui * k + vi] = scale * sum;
      }
    });
    for (std::size_t ui = 0; ui < k; ++ui) {
      for (std::size_t vi = 0; vi < ui; ++vi) next[ui * k + vi] = next[vi * k + ui];
    }

    double delta = 0.0;
    for (std::size_t i = 0; i < k * k; ++i) delta = std::max(delta, std::abs(next[i] - current[i]));
    std::swap(current, next);
    table.iterations_run_ = iter + 1;
    if (delta < params.tolerance) {
      table.converged_ = true;
      break;
    }
  }

  table.block_ = std::move(current);
  return table;
}

std::vector<SimilarUser> top_n_similar(const SimilarityTable& table, UserIx u, std::size_t n) {
  if (u >= table.user_count()) throw LookupError("user index " + std::to_string(u) + " not in similarity table");
  std::vector<SimilarUser> out;
  if (n == 0) return out;
  for (UserIx v : table.active_users()) {
    if (v == u) continue;
    double s = table.value(u, v);
    if (s > 0.0) out.push_back({v, s});
  }
  auto order = [](const SimilarUser& a, const SimilarUser& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.user < b.user;
  };
  if (out.size() > n) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), out.end(), order);
    out.resize(n);
  } else {
    std::sort(out.begin(), out.end(), order);
  }
  return out;
}

CandidateSet candidate_sellers(const CommercialGraph& g, UserIx u, std::vector<SimilarUser> similar) {
  CandidateSet set{u, std::move(similar), {}};
  auto own = g.sellers_of(u);
  for (const auto& s : set.similar_users) {
    for (UserIx seller : g.sellers_of(s.user)) {
      if (seller == u || std::binary_search(own.begin(), own.end(), seller)) continue;
      set.candidates.push_back(seller);
    }
  }
  std::sort(set.candidates.begin(), set.candidates.end());
  set.candidates.erase(std::unique(set.candidates.begin(), set.candidates.end()), set.candidates.end());
  return set;
}

std::uint64_t graph_fingerprint(const CommercialGraph& g) {
  // Transactions are already in canonical (id) order.
  std::uint64_t h = splitmix64(g.transaction_count());
  for (const auto& t : g.transactions()) {
    h = splitmix64(h ^ hash_string(t.id));
    h = splitmix64(h ^ hash_string(t.buyer));
    h = splitmix64(h ^ hash_string(t.seller));
  }
  return h;
}

void write_similarity(std::ostream& out, const SimilarityTable& table, const CommercialGraph& g) {
  out << "# graph=" << graph_fingerprint(g) << '\n';
  out << "# damping=" << format_real(table.damping()) << '\n';
  out << "# iterations=" << table.iterations_run() << '\n';
  out << "# converged=" << (table.converged() ? 1 : 0) << '\n';
  const auto& active = table.active_users();
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      double v = table.value(active[i], active[j]);
      if (v == 0.0) continue;
      out << g.user_id(active[i]) << ',' << g.user_id(active[j]) << ',' << format_significant(v, 9) << '\n';
    }
  }
}

SimilarityTable read_similarity(std::istream& in, const CommercialGraph& g) {
  SimilarityTable table;
  const std::size_t n = g.user_count();
  table.active_slot_.assign(n, SimilarityTable::kInactive);
  for (UserIx u = 0; u < n; ++u) {
    if (!g.sellers_of(u).empty()) {
      table.active_slot_[u] = static_cast<std::uint32_t>(table.active_.size());
      table.active_.push_back(u);
    }
  }
  const std::size_t k = table.active_.size();
  table.block_.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) table.block_[i * k + i] = 1.0;

  bool fingerprint_seen = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2);
      std::string val = line.substr(eq + 1);
      try {
        if (key == "graph") {
          if (std::stoull(val) != graph_fingerprint(g)) {
            throw SchemaError("similarity cache was computed for a different graph");
          }
          fingerprint_seen = true;
        } else if (key == "damping") {
          table.damping_ = std::stod(val);
        } else if (key == "iterations") {
          table.iterations_run_ = std::stoi(val);
        } else if (key == "converged") {
          table.converged_ = val == "1";
        }
      } catch (const std::logic_error&) {
        throw SchemaError("similarity cache line " + std::to_string(line_no) + ": bad value for " + key);
      }
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != 3) throw SchemaError("similarity cache line " + std::to_string(line_no) + ": expected u,v,value");
    auto u = g.find_user(fields[0]);
    auto v = g.find_user(fields[1]);
    if (!u || !v) throw SchemaError("similarity cache line " + std::to_string(line_no) + ": unknown user");
    auto i = table.active_slot_[*u];
    auto j = table.active_slot_[*v];
    if (i == SimilarityTable::kInactive || j == SimilarityTable::kInactive) {
      throw SchemaError("similarity cache line " + std::to_string(line_no) + ": pair outside the purchase block");
    }
    double value = 0.0;
    try {
      value = std::stod(fields[2]);
    } catch (const std::logic_error&) {
      throw SchemaError("similarity cache line " + std::to_string(line_no) + ": bad value");
    }
    table.block_[std::size_t{i} * k + j] = value;
    table.block_[std::size_t{j} * k + i] = value;
  }
  if (!fingerprint_seen) throw SchemaError("similarity cache has no graph fingerprint");
  return table;
}

}  // namespace c2c
