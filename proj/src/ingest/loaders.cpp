#include "flarko/ingest/loaders.hpp"

#include <algorithm>
#include <cctype>

#include "flarko/util/csv.hpp"
#include "flarko/util/decimal.hpp"
#include "flarko/util/errors.hpp"
#include "flarko/util/isin.hpp"

namespace flarko::ingest {

namespace {

int required_column(const CsvReader& reader, const std::string& name) {
    const int idx = reader.column(name);
    if (idx < 0) throw DataError("missing column '" + name + "'");
    return idx;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::vector<TransactionRecord> load_transactions(std::istream& source,
                                                 const TransactionsMapping& mapping,
                                                 LoadReport& report) {
    CsvReader reader(source);
    const int c_user = required_column(reader, mapping.user_id);
    const int c_isin = required_column(reader, mapping.isin);
    const int c_type = required_column(reader, mapping.txn_type);
    const int c_value = required_column(reader, mapping.value);
    const int c_ts = required_column(reader, mapping.timestamp);
    const int width = std::max({c_user, c_isin, c_type, c_value, c_ts});

    std::vector<TransactionRecord> records;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const auto reject = [&](std::string reason) {
            report.rejects.push_back({reader.record_number(), std::move(reason)});
        };
        if (static_cast<int>(row.size()) <= width) {
            reject("too few fields");
            continue;
        }
        TransactionRecord rec;
        rec.user_id = row[static_cast<size_t>(c_user)];
        rec.isin = row[static_cast<size_t>(c_isin)];
        if (rec.user_id.empty()) {
            reject("empty user id");
            continue;
        }
        if (!is_valid_isin(rec.isin)) {
            reject("invalid ISIN '" + rec.isin + "'");
            continue;
        }
        const std::string type_text = lower(row[static_cast<size_t>(c_type)]);
        if (type_text == "buy") {
            rec.txn_type = TxnType::Buy;
        } else if (type_text == "sell") {
            rec.txn_type = TxnType::Sell;
        } else {
            reject("unknown transaction type '" + row[static_cast<size_t>(c_type)] + "'");
            continue;
        }
        const auto value = parse_decimal(row[static_cast<size_t>(c_value)]);
        if (!value) {
            reject("unparseable value '" + row[static_cast<size_t>(c_value)] + "'");
            continue;
        }
        if (*value <= 0) {
            reject("non-positive value");
            continue;
        }
        rec.value = *value;
        const auto ts = Date::try_parse(row[static_cast<size_t>(c_ts)]);
        if (!ts) {
            reject("unparseable date '" + row[static_cast<size_t>(c_ts)] + "'");
            continue;
        }
        rec.timestamp = *ts;
        records.push_back(std::move(rec));
    }
    return records;
}

std::map<std::string, std::vector<PriceBar>> load_prices(std::istream& source,
                                                         const PricesMapping& mapping,
                                                         LoadReport& report) {
    CsvReader reader(source);
    const int c_isin = required_column(reader, mapping.isin);
    const int c_date = required_column(reader, mapping.date);
    const int c_close = required_column(reader, mapping.close);
    const int width = std::max({c_isin, c_date, c_close});

    std::map<std::string, std::vector<PriceBar>> series;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const auto reject = [&](std::string reason) {
            report.rejects.push_back({reader.record_number(), std::move(reason)});
        };
        if (static_cast<int>(row.size()) <= width) {
            reject("too few fields");
            continue;
        }
        PriceBar bar;
        bar.isin = row[static_cast<size_t>(c_isin)];
        if (!is_valid_isin(bar.isin)) {
            reject("invalid ISIN '" + bar.isin + "'");
            continue;
        }
        const auto date = Date::try_parse(row[static_cast<size_t>(c_date)]);
        if (!date) {
            reject("unparseable date '" + row[static_cast<size_t>(c_date)] + "'");
            continue;
        }
        bar.date = *date;
        const auto close = parse_decimal(row[static_cast<size_t>(c_close)]);
        if (!close) {
            reject("unparseable close '" + row[static_cast<size_t>(c_close)] + "'");
            continue;
        }
        if (*close <= 0) {
            reject("non-positive close");
            continue;
        }
        bar.close = *close;
        series[bar.isin].push_back(bar);
    }

    for (auto& [isin, bars] : series) {
        std::stable_sort(bars.begin(), bars.end(),
                         [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
        // Last occurrence wins on duplicate dates.
        std::vector<PriceBar> deduped;
        deduped.reserve(bars.size());
        for (const auto& bar : bars) {
            if (!deduped.empty() && deduped.back().date == bar.date) {
                report.warnings.push_back("duplicate price for " + isin + " on " +
                                          bar.date.to_string() + "; keeping last");
                deduped.back() = bar;
            } else {
                deduped.push_back(bar);
            }
        }
        bars = std::move(deduped);
    }
    return series;
}

std::vector<AssetInfo> load_assets(std::istream& source, const AssetsMapping& mapping,
                                   LoadReport& report) {
    CsvReader reader(source);
    const int c_isin = required_column(reader, mapping.isin);
    const int c_category = required_column(reader, mapping.category);
    const int c_sector = required_column(reader, mapping.sector);
    const int c_industry = required_column(reader, mapping.industry);
    const int width = std::max({c_isin, c_category, c_sector, c_industry});

    std::vector<AssetInfo> assets;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const auto reject = [&](std::string reason) {
            report.rejects.push_back({reader.record_number(), std::move(reason)});
        };
        if (static_cast<int>(row.size()) <= width) {
            reject("too few fields");
            continue;
        }
        AssetInfo info;
        info.isin = row[static_cast<size_t>(c_isin)];
        if (!is_valid_isin(info.isin)) {
            reject("invalid ISIN '" + info.isin + "'");
            continue;
        }
        info.category = row[static_cast<size_t>(c_category)];
        info.sector = row[static_cast<size_t>(c_sector)];
        info.industry = row[static_cast<size_t>(c_industry)];
        assets.push_back(std::move(info));
    }
    return assets;
}

}  // namespace flarko::ingest
