#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "c2c/apriori.hpp"
#include "c2c/config.hpp"
#include "c2c/eval.hpp"
#include "c2c/graph.hpp"
#include "c2c/item_select.hpp"
#include "c2c/scoring.hpp"

namespace c2c {

using Json = nlohmann::ordered_json;

// Graph snapshot written by `ingest`: the normalized transactions.
void write_graph_cache(std::ostream& out, const std::vector<Transaction>& transactions);
// Throws SchemaError on a malformed snapshot.
std::vector<Transaction> read_graph_cache(std::istream& in);

// Loads transactions from a graph cache (.json) or an ingest CSV (anything
// else). CSV rows that fail validation are dropped; `rejected` receives
// their count when non-null.
std::vector<Transaction> load_transactions(const std::filesystem::path& path, const RatingScale& scale,
                                           std::size_t* rejected = nullptr);

Json config_json(const RunConfig& config);

// {target, coefficients:{alpha,beta,gamma}, candidates:[{seller, cat, rep,
// rat, total, ...}]} with scores rounded to 6 decimals.
Json ranking_json(const CommercialGraph& g, const std::string& target, const FusionWeights& w,
                  const std::vector<ScoredCandidate>& ranked, const Recommendation& rec);

// One line per rule: {antecedent:[...], consequent, support, confidence}.
void write_rules_jsonl(std::ostream& out, const CommercialGraph& g, const std::vector<AssociationRule>& rules);

Json report_json(const ExperimentReport& report);
// Columns: series,fold,size,precision,recall,f. Aggregate rows use fold
// "mean".
void write_report_csv(std::ostream& out, const ExperimentReport& report);

Json stats_json(const GraphStats& s);

}  // namespace c2c
