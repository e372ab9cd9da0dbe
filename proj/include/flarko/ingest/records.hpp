#pragma once

#include <string>

#include "flarko/util/date.hpp"

namespace flarko::ingest {

enum class TxnType { Buy, Sell };

struct TransactionRecord {
    std::string user_id;
    std::string isin;
    TxnType txn_type = TxnType::Buy;
    double value = 0.0;
    Date timestamp;
};

struct PriceBar {
    std::string isin;
    Date date;
    double close = 0.0;
};

struct AssetInfo {
    std::string isin;
    std::string category;
    std::string sector;
    std::string industry;
};

// Price statistics over one 70-day window (ten 7-day weeks, inclusive).
struct TenWeekPriceSummary {
    std::string isin;
    Date period_start;
    Date period_end;  // period_end - period_start == 69 days
    double high = 0.0;
    double low = 0.0;
    double average = 0.0;
    double end_price = 0.0;
};

}  // namespace flarko::ingest
