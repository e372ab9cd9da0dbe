#include "flarko/ingest/summarize.hpp"

#include <algorithm>
#include <cassert>

namespace flarko::ingest {

namespace {
constexpr int kWindowDays = 70;
}

std::vector<TenWeekPriceSummary> summarize_prices(std::span<const PriceBar> series,
                                                  Date cutoff) {
    std::vector<TenWeekPriceSummary> out;
    if (series.empty()) return out;
    assert(std::is_sorted(series.begin(), series.end(),
                          [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; }));

    const Date first_bar = series.front().date;
    // Bars at or past the cutoff can never fall inside a window.
    auto end_it = std::lower_bound(
        series.begin(), series.end(), cutoff,
        [](const PriceBar& bar, const Date& d) { return bar.date < d; });

    for (int k = 0;; ++k) {
        const Date window_end = cutoff.add_days(-1 - kWindowDays * k);
        if (window_end < first_bar) break;
        const Date window_start = window_end.add_days(-(kWindowDays - 1));

        auto lo = std::lower_bound(
            series.begin(), end_it, window_start,
            [](const PriceBar& bar, const Date& d) { return bar.date < d; });
        auto hi = std::upper_bound(
            series.begin(), end_it, window_end,
            [](const Date& d, const PriceBar& bar) { return d < bar.date; });
        if (lo == hi) continue;

        TenWeekPriceSummary summary;
        summary.isin = lo->isin;
        summary.period_start = window_start;
        summary.period_end = window_end;
        summary.high = lo->close;
        summary.low = lo->close;
        double sum = 0.0;
        for (auto it = lo; it != hi; ++it) {
            summary.high = std::max(summary.high, it->close);
            summary.low = std::min(summary.low, it->close);
            sum += it->close;
        }
        summary.average = sum / static_cast<double>(hi - lo);
        summary.end_price = (hi - 1)->close;
        out.push_back(std::move(summary));
    }

    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace flarko::ingest
