#pragma once

#include <span>
#include <vector>

#include "flarko/ingest/records.hpp"
#include "flarko/util/date.hpp"

namespace flarko::ingest {

// Partitions time into consecutive non-overlapping 70-day windows anchored
// backward from the cutoff: the most recent window ends on cutoff - 1, each
// earlier window immediately precedes it. For every window holding at least
// one bar: high/low/average over closes, end_price = close of the latest bar
// in the window, period_end = last day of the window. Empty windows are
// omitted; summaries are returned oldest-first. Requires series sorted
// ascending by date.
std::vector<TenWeekPriceSummary> summarize_prices(std::span<const PriceBar> series,
                                                  Date cutoff);

}  // namespace flarko::ingest
