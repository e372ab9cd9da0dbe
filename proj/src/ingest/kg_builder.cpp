#include "flarko/ingest/kg_builder.hpp"

#include <algorithm>

#include "flarko/util/decimal.hpp"

namespace flarko::ingest {

using kg::Term;

kg::Graph build_pkg(std::span<const TransactionRecord> records, const std::string& user,
                    Date cutoff, const kg::Vocabulary& vocab) {
    std::vector<const TransactionRecord*> mine;
    for (const auto& rec : records) {
        if (rec.user_id == user && rec.timestamp < cutoff) mine.push_back(&rec);
    }
    std::stable_sort(mine.begin(), mine.end(),
                     [](const TransactionRecord* a, const TransactionRecord* b) {
                         return a->timestamp < b->timestamp;
                     });

    kg::Graph graph;
    std::size_t k = 0;
    for (const auto* rec : mine) {
        const Term node = vocab.transaction_node(++k);
        graph.insert(node, vocab.has_participant(), Term::literal(rec->user_id));
        graph.insert(node, vocab.involves_security(), Term::literal(rec->isin));
        graph.insert(node, vocab.transaction_value(),
                     Term::literal(format_decimal(rec->value), kg::xsd::kDecimal));
        graph.insert(node, vocab.transaction_timestamp(),
                     Term::literal(rec->timestamp.to_string(), kg::xsd::kDate));
        graph.insert(node, vocab.type(),
                     rec->txn_type == TxnType::Buy ? vocab.buy_transaction_class()
                                                   : vocab.sell_transaction_class());
        graph.insert(node, vocab.type(), vocab.transaction_class());
    }
    return graph;
}

kg::Graph build_mkg(const std::map<std::string, std::vector<TenWeekPriceSummary>>& summaries,
                    std::span<const AssetInfo> assets, Date cutoff,
                    const kg::Vocabulary& vocab, std::vector<std::string>* warnings) {
    (void)cutoff;  // summaries are produced at this cutoff; audited downstream

    std::map<std::string, const AssetInfo*> metadata;
    for (const auto& asset : assets) metadata.emplace(asset.isin, &asset);

    // Asset numbering covers listed assets plus any summarized-only ISINs.
    std::map<std::string, std::size_t> asset_index;
    for (const auto& asset : assets) asset_index.emplace(asset.isin, 0);
    for (const auto& [isin, _] : summaries) asset_index.emplace(isin, 0);
    std::size_t next_asset = 0;
    for (auto& [isin, index] : asset_index) index = ++next_asset;

    kg::Graph graph;
    for (const auto& [isin, index] : asset_index) {
        const Term node = vocab.asset_node(index);
        graph.insert(node, vocab.identifier(), Term::literal(isin));
        if (auto it = metadata.find(isin); it != metadata.end()) {
            graph.insert(node, vocab.category(), Term::literal(it->second->category));
            graph.insert(node, vocab.sector(), Term::literal(it->second->sector));
            graph.insert(node, vocab.industry(), Term::literal(it->second->industry));
        } else if (warnings) {
            warnings->push_back("no asset metadata for " + isin + "; identifier only");
        }
    }

    // Global summary numbering sorted by (isin, period_end); the map is
    // already isin-ordered, each series just needs period_end order.
    std::size_t k = 0;
    for (const auto& [isin, series] : summaries) {
        const Term asset = vocab.asset_node(asset_index.at(isin));
        std::vector<const TenWeekPriceSummary*> ordered;
        ordered.reserve(series.size());
        for (const auto& s : series) ordered.push_back(&s);
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const TenWeekPriceSummary* a, const TenWeekPriceSummary* b) {
                             return a->period_end < b->period_end;
                         });
        for (const auto* summary_ptr : ordered) {
            const auto& summary = *summary_ptr;
            const Term node = vocab.summary_node(++k);
            graph.insert(node, vocab.type(), vocab.summary_class());
            graph.insert(node, vocab.period_high_price(),
                         Term::literal(format_decimal(summary.high), kg::xsd::kDecimal));
            graph.insert(node, vocab.period_low_price(),
                         Term::literal(format_decimal(summary.low), kg::xsd::kDecimal));
            graph.insert(node, vocab.period_average_price(),
                         Term::literal(format_decimal(summary.average), kg::xsd::kDecimal));
            graph.insert(node, vocab.period_end_price(),
                         Term::literal(format_decimal(summary.end_price), kg::xsd::kDecimal));
            graph.insert(node, vocab.period_end_date(),
                         Term::literal(summary.period_end.to_string(), kg::xsd::kDate));
            graph.insert(node, vocab.price_of(), asset);
        }
    }
    return graph;
}

}  // namespace flarko::ingest
