#pragma once

// Canonical small fixtures used across suites: a single sell transaction
// and a one-summary market snapshot with known values.

#include <map>
#include <vector>

#include "flarko/ingest/records.hpp"
#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"
#include "flarko/util/date.hpp"

namespace fixtures {

using flarko::Date;
using flarko::kg::Term;

inline constexpr const char* kParticipant = "00017496858921195E5A";
inline constexpr const char* kSellIsin = "GRS434003000";
inline constexpr const char* kAirlineIsin = "GRS495003006";

inline flarko::ingest::TransactionRecord sample_sell_record() {
    flarko::ingest::TransactionRecord rec;
    rec.user_id = kParticipant;
    rec.isin = kSellIsin;
    rec.txn_type = flarko::ingest::TxnType::Sell;
    rec.value = 11000.0;
    rec.timestamp = Date::parse("2020-3-27");
    return rec;
}

// The five edges of the retrieved personal subgraph for that record.
inline flarko::kg::Graph sample_sell_edges(const flarko::kg::Vocabulary& vocab) {
    flarko::kg::Graph graph;
    const Term node = vocab.transaction_node(1);
    graph.insert(node, vocab.has_participant(), Term::literal(kParticipant));
    graph.insert(node, vocab.involves_security(), Term::literal(kSellIsin));
    graph.insert(node, vocab.transaction_value(),
                 Term::literal("11000", flarko::kg::xsd::kDecimal));
    graph.insert(node, vocab.transaction_timestamp(),
                 Term::literal("2020-03-27", flarko::kg::xsd::kDate));
    graph.insert(node, vocab.type(), vocab.sell_transaction_class());
    return graph;
}

inline flarko::ingest::AssetInfo sample_airline_asset() {
    return {kAirlineIsin, "Stock", "Industrials", "Airlines"};
}

inline flarko::ingest::TenWeekPriceSummary sample_airline_summary() {
    flarko::ingest::TenWeekPriceSummary s;
    s.isin = kAirlineIsin;
    s.period_end = Date::parse("2018-05-27");
    s.period_start = s.period_end.add_days(-69);
    s.high = 9.5;
    s.low = 8.54;
    s.average = 9.1679792;
    s.end_price = 8.54;
    return s;
}

// The eleven edges of the retrieved market subgraph for that summary.
inline flarko::kg::Graph sample_market_edges(const flarko::kg::Vocabulary& vocab) {
    flarko::kg::Graph graph;
    const Term summary = vocab.summary_node(1);
    const Term asset = vocab.asset_node(1);
    graph.insert(summary, vocab.type(), vocab.summary_class());
    graph.insert(summary, vocab.period_high_price(),
                 Term::literal("9.5", flarko::kg::xsd::kDecimal));
    graph.insert(summary, vocab.period_low_price(),
                 Term::literal("8.54", flarko::kg::xsd::kDecimal));
    graph.insert(summary, vocab.period_average_price(),
                 Term::literal("9.1679792", flarko::kg::xsd::kDecimal));
    graph.insert(summary, vocab.period_end_price(),
                 Term::literal("8.54", flarko::kg::xsd::kDecimal));
    graph.insert(summary, vocab.period_end_date(),
                 Term::literal("2018-05-27", flarko::kg::xsd::kDate));
    graph.insert(summary, vocab.price_of(), asset);
    graph.insert(asset, vocab.identifier(), Term::literal(kAirlineIsin));
    graph.insert(asset, vocab.category(), Term::literal("Stock"));
    graph.insert(asset, vocab.sector(), Term::literal("Industrials"));
    graph.insert(asset, vocab.industry(), Term::literal("Airlines"));
    return graph;
}

inline std::map<std::string, std::vector<flarko::ingest::TenWeekPriceSummary>>
sample_summary_map() {
    return {{kAirlineIsin, {sample_airline_summary()}}};
}

}  // namespace fixtures
