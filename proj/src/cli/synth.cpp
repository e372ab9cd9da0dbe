#include "flarko/cli/synth.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "flarko/util/decimal.hpp"
#include "flarko/util/errors.hpp"

namespace flarko::cli {

namespace {

// Portable uniforms on top of mt19937_64; std::uniform_real_distribution is
// implementation-defined and would break cross-toolchain reproducibility.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

std::string synth_isin(int index) {
    static const char* alphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::string middle(9, '0');
    int v = index;
    for (int i = 8; i >= 0 && v > 0; --i) {
        middle[static_cast<size_t>(i)] = alphabet[v % 36];
        v /= 36;
    }
    return "SY" + middle + std::to_string(index % 10);
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

void write_synthetic_dataset(const RunConfig& config) {
    const auto& spec = config.synth;
    std::mt19937_64 rng(config.seed);

    std::vector<std::string> isins;
    for (int i = 0; i < spec.assets; ++i) isins.push_back(synth_isin(i + 1));

    static const char* categories[] = {"Stock", "Bond", "ETF"};
    static const char* sectors[] = {"Industrials", "Technology", "Financials", "Energy",
                                    "Healthcare"};
    static const char* industries[] = {"Airlines", "Software", "Banks", "Oil & Gas",
                                       "Biotech", "Semiconductors"};

    {
        auto out = open_out(config.assets_path);
        out << config.asset_mapping.isin << ',' << config.asset_mapping.category << ','
            << config.asset_mapping.sector << ',' << config.asset_mapping.industry << '\n';
        for (int i = 0; i < spec.assets; ++i) {
            out << isins[static_cast<size_t>(i)] << ',' << categories[i % 3] << ','
                << sectors[i % 5] << ',' << industries[i % 6] << '\n';
        }
    }

    // Weekday closes over the whole range: a drifting multiplicative walk.
    std::map<std::string, std::vector<ingest::PriceBar>> prices;
    {
        auto out = open_out(config.prices_path);
        out << config.price_mapping.isin << ',' << config.price_mapping.date << ','
            << config.price_mapping.close << '\n';
        for (int i = 0; i < spec.assets; ++i) {
            const auto& isin = isins[static_cast<size_t>(i)];
            double price = 5.0 + 95.0 * uniform01(rng);
            for (Date d = spec.start; d <= spec.end; d = d.add_days(1)) {
                const int weekday = ((d.days_since_epoch() % 7) + 7) % 7;  // 1970-01-01 = Thursday
                const bool is_weekend = weekday == 2 || weekday == 3;
                price *= 1.0 + (uniform01(rng) - 0.485) * 0.04;
                if (is_weekend) continue;
                const double close = round2(std::max(price, 0.01));
                out << isin << ',' << d.to_string() << ',' << format_decimal(close) << '\n';
                prices[isin].push_back({isin, d, close});
            }
        }
    }

    {
        auto out = open_out(config.transactions_path);
        out << config.txn_mapping.user_id << ',' << config.txn_mapping.isin << ','
            << config.txn_mapping.txn_type << ',' << config.txn_mapping.value << ','
            << config.txn_mapping.timestamp << '\n';
        const int range_days = spec.end - spec.start;
        for (int u = 0; u < spec.users; ++u) {
            char user_id[16];
            std::snprintf(user_id, sizeof(user_id), "u%03d", u + 1);
            std::vector<std::pair<Date, std::string>> rows;
            for (int t = 0; t < spec.transactions_per_user; ++t) {
                const Date when =
                    spec.start.add_days(static_cast<int>(uniform_int(rng, 0, range_days)));
                const auto& isin =
                    isins[static_cast<size_t>(uniform_int(rng, 0, spec.assets - 1))];
                const bool buy = uniform01(rng) < 0.7;
                const double value = round2(100.0 + 19900.0 * uniform01(rng));
                rows.emplace_back(when, std::string(user_id) + ',' + isin + ',' +
                                            (buy ? "Buy" : "Sell") + ',' +
                                            format_decimal(value) + ',' + when.to_string());
            }
            std::stable_sort(rows.begin(), rows.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            for (const auto& [_, line] : rows) out << line << '\n';
        }
    }
}

}  // namespace flarko::cli
