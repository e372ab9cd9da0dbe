#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "flarko/ingest/records.hpp"
#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"
#include "flarko/util/date.hpp"

namespace flarko::ingest {

// One transaction node per record of `user` with timestamp strictly before
// the cutoff: hasParticipant, involvesSecurity, transactionValue,
// transactionTimestamp, type (Buy/Sell class) plus the base Transaction
// class. Node IRIs ns:Transaction_{k}, numbered chronologically from 1.
// An unknown user yields an empty graph.
kg::Graph build_pkg(std::span<const TransactionRecord> records, const std::string& user,
                    Date cutoff, const kg::Vocabulary& vocab);

// Asset nodes (identifier/category/sector/industry) for the union of the
// asset list and the summarized ISINs; summary nodes carry type, the four
// price statistics, periodEndDate, and a priceOf edge to their asset.
// Summary IRIs ns:TenWeekPriceSummary_{k} are numbered globally, sorted by
// (isin, period_end); asset IRIs ns:Asset_{k} sorted by isin. A summarized
// ISIN missing from the asset list gets an identifier-only node plus a
// warning.
kg::Graph build_mkg(const std::map<std::string, std::vector<TenWeekPriceSummary>>& summaries,
                    std::span<const AssetInfo> assets, Date cutoff,
                    const kg::Vocabulary& vocab,
                    std::vector<std::string>* warnings = nullptr);

}  // namespace flarko::ingest
