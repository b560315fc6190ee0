#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "c2c/transaction.hpp"

namespace c2c {

// Documented column order of the transaction CSV.
inline constexpr std::array<const char*, 11> kCsvColumns = {
    "txn_id",         "buyer_id",       "seller_id",       "item_id",
    "category",       "price",          "quantity",        "rating_overall",
    "rating_quality", "rating_delivery", "rating_support"};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string column;
  std::string message;
};

struct IngestResult {
  std::vector<Transaction> transactions;
  std::vector<RejectedRow> rejected;
};

// Parses the transaction CSV. Bad rows are rejected and recorded, the rest
// of the file is still read. The quantity column may be blank per row or
// absent from the header, meaning quantity 1. Throws IoError when the file cannot be opened,
// SchemaError on a missing or mismatched header, ConfigError on an invalid
// rating scale.
IngestResult ingest_csv(const std::filesystem::path& path, const RatingScale& scale);
IngestResult ingest_csv(std::istream& in, const RatingScale& scale);

// Writes transactions back out in the ingest format, mapping ratings onto
// the raw scale. Output is accepted by ingest_csv with no rejected rows.
void write_csv(std::ostream& out, const std::vector<Transaction>& transactions,
               const RatingScale& scale);

// Splits one CSV record. Supports RFC 4180 double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace c2c
