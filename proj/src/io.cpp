#include "c2c/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "c2c/csv_ingest.hpp"
#include "c2c/error.hpp"
#include "c2c/format.hpp"

namespace c2c {

namespace {

constexpr const char* kCacheFormat = "c2c-graph-cache";
constexpr int kCacheVersion = 1;

double r6(double x) { return round_to(x, 6); }

Json metric_json(const MetricPoint& p) {
  return Json{{"size", p.size}, {"precision", p.precision}, {"recall", p.recall}, {"f", p.f_measure}};
}

}  // namespace

void write_graph_cache(std::ostream& out, const std::vector<Transaction>& transactions) {
  Json txns = Json::array();
  for (const auto& t : transactions) {
    txns.push_back(Json{{"id", t.id},
                        {"buyer", t.buyer},
                        {"seller", t.seller},
                        {"item", t.item},
                        {"category", t.category},
                        {"price", t.price},
                        {"quantity", t.quantity},
                        {"ratings", t.ratings.as_array()}});
  }
  out << Json{{"format", kCacheFormat}, {"version", kCacheVersion}, {"transactions", std::move(txns)}}.dump() << '\n';
}

std::vector<Transaction> read_graph_cache(std::istream& in) {
  std::vector<Transaction> out;
  try {
    auto doc = Json::parse(in);
    if (doc.value("format", "") != kCacheFormat || doc.value("version", 0) != kCacheVersion) {
      throw SchemaError("not a graph cache (format/version mismatch)");
    }
    for (const auto& j : doc.at("transactions")) {
      Transaction t;
      t.id = j.at("id").get<std::string>();
      t.buyer = j.at("buyer").get<std::string>();
      t.seller = j.at("seller").get<std::string>();
      t.item = j.at("item").get<std::string>();
      t.category = j.at("category").get<std::string>();
      t.price = j.at("price").get<double>();
      t.quantity = j.at("quantity").get<std::int64_t>();
      auto r = j.at("ratings").get<std::array<double, RatingVector::kComponents>>();
      t.ratings = {r[0], r[1], r[2], r[3]};
      out.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed graph cache: ") + e.what());
  }
  return out;
}

std::vector<Transaction> load_transactions(const std::filesystem::path& path, const RatingScale& scale,
                                           std::size_t* rejected) {
  if (path.extension() == ".json") {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    if (rejected) *rejected = 0;
    return read_graph_cache(in);
  }
  auto result = ingest_csv(path, scale);
  if (rejected) *rejected = result.rejected.size();
  return std::move(result.transactions);
}

Json config_json(const RunConfig& c) {
  return Json{
      {"simrank", {{"C", c.simrank.damping}, {"max_iters", c.simrank.max_iterations}, {"tol", c.simrank.tolerance}}},
      {"candidates", {{"n", c.similar_users}}},
      {"fusion", {{"alpha", c.fusion.alpha}, {"beta", c.fusion.beta}, {"gamma", c.fusion.gamma}}},
      {"items",
       {{"method", to_string(c.item_method)},
        {"min_support", c.apriori.min_support},
        {"min_confidence", c.apriori.min_confidence},
        {"min_count", c.apriori.min_count}}},
      {"eval",
       {{"k", c.eval.folds},
        {"samples", c.eval.samples},
        {"list_sizes", c.eval.list_sizes},
        {"mode", to_string(c.eval.mode)},
        {"max_held_out_links", c.eval.max_held_out_links}}},
      {"seed", c.seed},
      {"rating_scale", {{"min", c.rating_scale.min}, {"max", c.rating_scale.max}}},
  };
}

Json ranking_json(const CommercialGraph& g, const std::string& target, const FusionWeights& w,
                  const std::vector<ScoredCandidate>& ranked, const Recommendation& rec) {
  Json candidates = Json::array();
  for (const auto& e : rec.entries) {
    Json entry{{"seller", g.user_id(e.seller)}};
    for (const auto& c : ranked) {
      if (c.seller != e.seller) continue;
      entry["cat"] = r6(c.normalized.category);
      entry["rep"] = r6(c.normalized.reputation);
      entry["rat"] = r6(c.normalized.rating);
      entry["total"] = r6(c.total);
      entry["raw"] = {{"cat", r6(c.raw.category)}, {"rep", r6(c.raw.reputation)}, {"rat", r6(c.raw.rating)}};
      break;
    }
    if (rec.cold_start) entry["sales"] = g.sales_count(e.seller);
    entry["item"] = g.item_id(e.item);
    entry["selection"] = to_string(e.tag);
    candidates.push_back(std::move(entry));
  }
  return Json{{"target", target},
              {"cold_start", rec.cold_start},
              {"coefficients", {{"alpha", r6(w.alpha)}, {"beta", r6(w.beta)}, {"gamma", r6(w.gamma)}}},
              {"candidates", std::move(candidates)},
              {"skipped_sellers", rec.skipped_sellers}};
}

void write_rules_jsonl(std::ostream& out, const CommercialGraph& g, const std::vector<AssociationRule>& rules) {
  for (const auto& r : rules) {
    Json antecedent = Json::array();
    for (ItemIx i : r.antecedent) antecedent.push_back(g.item_id(i));
    out << Json{{"antecedent", std::move(antecedent)},
                {"consequent", g.item_id(r.consequent)},
                {"support", r.support},
                {"confidence", r.confidence}}
               .dump()
        << '\n';
  }
}

Json report_json(const ExperimentReport& report) {
  Json folds = Json::array();
  for (const auto& f : report.folds) {
    folds.push_back(Json{{"fold", f.fold},
                         {"training_transactions", f.training_transactions},
                         {"validation_transactions", f.validation_transactions},
                         {"eligible_targets", f.eligible_targets},
                         {"targets", f.targets},
                         {"shortfall", f.shortfall},
                         {"skipped", f.skipped},
                         {"simrank_iterations", f.simrank_iterations},
                         {"rules", f.rules}});
  }
  Json series = Json::array();
  for (const auto& s : report.series) {
    Json per_fold = Json::array();
    for (std::size_t f = 0; f < s.per_fold.size(); ++f) {
      Json points = Json::array();
      for (const auto& p : s.per_fold[f]) points.push_back(metric_json(p));
      per_fold.push_back(Json{{"fold", f}, {"points", std::move(points)}});
    }
    Json aggregate = Json::array();
    for (const auto& p : s.aggregate) aggregate.push_back(metric_json(p));
    series.push_back(Json{{"name", s.name},
                          {"mode", s.mode == UserMode::m1 ? "M1" : "M2"},
                          {"level", s.level == Level::user ? "user" : "item"},
                          {"method", s.method ? Json(to_string(*s.method)) : Json(nullptr)},
                          {"aggregate", std::move(aggregate)},
                          {"maximum",
                           {{"precision", s.maximum.precision},
                            {"recall", s.maximum.recall},
                            {"f", s.maximum.f_measure}}},
                          {"per_fold", std::move(per_fold)}});
  }
  // Published item-level maxima (percent) for side-by-side comparison.
  Json reference = {
      {"units", "percent"},
      {"best_selling", {{"precision", 10.79}, {"recall", 25.34}, {"f", 10.44}}},
      {"rules", {{"precision", 0.15}, {"recall", 0.49}, {"f", 0.21}}},
      {"random", {{"precision", 0.29}, {"recall", 0.458}, {"f", 0.33}}},
  };
  return Json{{"config", config_json(report.config)},
              {"transactions", report.transactions},
              {"reference_item_maxima", std::move(reference)},
              {"folds", std::move(folds)},
              {"series", std::move(series)}};
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "series,fold,size,precision,recall,f\n";
  auto row = [&](const std::string& series, const std::string& fold, const MetricPoint& p) {
    out << series << ',' << fold << ',' << p.size << ',' << format_real(p.precision) << ','
        << format_real(p.recall) << ',' << format_real(p.f_measure) << '\n';
  };
  for (const auto& s : report.series) {
    for (const auto& p : s.aggregate) row(s.name, "mean", p);
    for (std::size_t f = 0; f < s.per_fold.size(); ++f) {
      for (const auto& p : s.per_fold[f]) row(s.name, std::to_string(f), p);
    }
  }
}

Json stats_json(const GraphStats& s) {
  return Json{{"users", s.users},
              {"transactions", s.transactions},
              {"edges", s.edges},
              {"density", s.density},
              {"average_degree", s.average_degree},
              {"max_in_degree", s.max_in_degree},
              {"max_out_degree", s.max_out_degree}};
}

}  // namespace c2c
