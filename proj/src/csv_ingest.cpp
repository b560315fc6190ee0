#include "c2c/csv_ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_set>

#include "c2c/error.hpp"
#include "c2c/format.hpp"

namespace c2c {

namespace {

enum Column : std::size_t {
  kTxnId,
  kBuyer,
  kSeller,
  kItem,
  kCategory,
  kPrice,
  kQuantity,
  kRatingOverall,
  kRatingQuality,
  kRatingDelivery,
  kRatingSupport,
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_count(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return value;
}

struct RowParse {
  std::optional<Transaction> txn;
  RejectedRow error;
};

RowParse parse_row(const std::vector<std::string>& fields, std::size_t line, const RatingScale& scale) {
  auto reject = [line](Column col, std::string msg) {
    return RowParse{std::nullopt, RejectedRow{line, kCsvColumns[col], std::move(msg)}};
  };

  if (fields.size() != kCsvColumns.size()) {
    return RowParse{std::nullopt,
                    RejectedRow{line, fields.size() < kCsvColumns.size() ? kCsvColumns[fields.size()] : "",
                                "expected " + std::to_string(kCsvColumns.size()) + " fields, got " +
                                    std::to_string(fields.size())}};
  }

  Transaction t;
  const std::array<std::pair<Column, std::string*>, 5> ids = {{{kTxnId, &t.id},
                                                               {kBuyer, &t.buyer},
                                                               {kSeller, &t.seller},
                                                               {kItem, &t.item},
                                                               {kCategory, &t.category}}};
  for (auto [col, dest] : ids) {
    *dest = std::string(trim(fields[col]));
    if (dest->empty()) return reject(col, "empty identifier");
  }
  if (t.buyer == t.seller) return reject(kSeller, "buyer and seller are the same user");

  auto price = parse_real(fields[kPrice]);
  if (!price) return reject(kPrice, "not a number: '" + fields[kPrice] + "'");
  if (*price < 0.0) return reject(kPrice, "negative price");
  t.price = *price;

  if (trim(fields[kQuantity]).empty()) {
    t.quantity = 1;
  } else {
    auto qty = parse_count(fields[kQuantity]);
    if (!qty) return reject(kQuantity, "not an integer: '" + fields[kQuantity] + "'");
    if (*qty < 1) return reject(kQuantity, "quantity must be at least 1");
    t.quantity = *qty;
  }

  const std::array<std::pair<Column, double*>, RatingVector::kComponents> ratings = {
      {{kRatingOverall, &t.ratings.overall},
       {kRatingQuality, &t.ratings.quality},
       {kRatingDelivery, &t.ratings.delivery},
       {kRatingSupport, &t.ratings.support}}};
  for (auto [col, dest] : ratings) {
    auto raw = parse_real(fields[col]);
    if (!raw) return reject(col, "not a number: '" + fields[col] + "'");
    if (!scale.contains(*raw)) {
      return reject(col, "rating " + format_real(*raw) + " outside scale [" + format_real(scale.min) + ", " +
                             format_real(scale.max) + "]");
    }
    *dest = scale.normalize(*raw);
  }
  return RowParse{std::move(t), {}};
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

IngestResult ingest_csv(std::istream& in, const RatingScale& scale) {
  if (!(scale.min < scale.max)) {
    throw ConfigError("rating scale requires min < max, got [" + format_real(scale.min) + ", " +
                      format_real(scale.max) + "]");
  }

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto header = split_csv_line(line);
  for (auto& h : header) h = std::string(trim(h));
  // The quantity column may be left out altogether; every quantity is then 1.
  std::vector<std::string> expected(kCsvColumns.begin(), kCsvColumns.end());
  bool has_quantity = header == expected;
  if (!has_quantity) {
    expected.erase(expected.begin() + kQuantity);
    if (header != expected) throw SchemaError("header does not match expected columns: '" + line + "'");
  }

  IngestResult result;
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!has_quantity && fields.size() + 1 == kCsvColumns.size()) fields.insert(fields.begin() + kQuantity, "");
    auto parsed = parse_row(fields, line_no, scale);
    if (parsed.txn && !seen_ids.insert(parsed.txn->id).second) {
      parsed = RowParse{std::nullopt, RejectedRow{line_no, kCsvColumns[kTxnId], "duplicate txn_id '" + parsed.txn->id + "'"}};
    }
    if (parsed.txn) {
      result.transactions.push_back(std::move(*parsed.txn));
    } else {
      result.rejected.push_back(std::move(parsed.error));
    }
  }
  return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const RatingScale& scale) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return ingest_csv(in, scale);
}

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Transaction>& transactions, const RatingScale& scale) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
  for (const auto& t : transactions) {
    out << quote_if_needed(t.id) << ',' << quote_if_needed(t.buyer) << ',' << quote_if_needed(t.seller) << ','
        << quote_if_needed(t.item) << ',' << quote_if_needed(t.category) << ',' << format_real(t.price) << ','
        << t.quantity;
    for (double r : t.ratings.as_array()) out << ',' << format_real(scale.denormalize(r));
    out << '\n';
  }
}

}  // namespace c2c
