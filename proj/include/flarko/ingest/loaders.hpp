#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "flarko/ingest/records.hpp"

namespace flarko::ingest {

struct TransactionsMapping {
    std::string user_id = "customerID";
    std::string isin = "ISIN";
    std::string txn_type = "transactionType";
    std::string value = "totalValue";
    std::string timestamp = "timestamp";
};

struct PricesMapping {
    std::string isin = "ISIN";
    std::string date = "timestamp";
    std::string close = "closePrice";
};

struct AssetsMapping {
    std::string isin = "ISIN";
    std::string category = "assetCategory";
    std::string sector = "sector";
    std::string industry = "industry";
};

struct RejectedRow {
    std::size_t record_number = 0;  // 1-based, header excluded
    std::string reason;
};

// Rows that fail invariants land in rejects; structural problems
// (duplicate price dates, missing asset metadata) land in warnings.
struct LoadReport {
    std::vector<RejectedRow> rejects;
    std::vector<std::string> warnings;
};

// All loaders throw DataError when a mapped column is absent, naming it.
std::vector<TransactionRecord> load_transactions(std::istream& source,
                                                 const TransactionsMapping& mapping,
                                                 LoadReport& report);

// Per-ISIN series sorted ascending by date; a duplicate (isin, date) keeps
// the last occurrence and records a warning.
std::map<std::string, std::vector<PriceBar>> load_prices(std::istream& source,
                                                         const PricesMapping& mapping,
                                                         LoadReport& report);

std::vector<AssetInfo> load_assets(std::istream& source, const AssetsMapping& mapping,
                                   LoadReport& report);

}  // namespace flarko::ingest
