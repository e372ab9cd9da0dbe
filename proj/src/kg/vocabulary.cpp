#include "flarko/kg/vocabulary.hpp"

#include <algorithm>

namespace flarko::kg {

Vocabulary::Vocabulary(std::string namespace_iri) : ns_(std::move(namespace_iri)) {
    const auto p = [this](std::string_view local) { return Term::iri(ns_ + std::string(local)); };
    has_participant_ = p("hasParticipant");
    involves_security_ = p("involvesSecurity");
    transaction_value_ = p("transactionValue");
    transaction_timestamp_ = p("transactionTimestamp");
    type_ = p("type");
    price_of_ = p("priceOf");
    period_end_price_ = p("periodEndPrice");
    period_average_price_ = p("periodAveragePrice");
    period_high_price_ = p("periodHighPrice");
    period_low_price_ = p("periodLowPrice");
    period_end_date_ = p("periodEndDate");
    identifier_ = p("identifier");
    category_ = p("category");
    sector_ = p("sector");
    industry_ = p("industry");
    transaction_class_ = p("Transaction");
    buy_transaction_class_ = p("BuyTransaction");
    sell_transaction_class_ = p("SellTransaction");
    summary_class_ = p("TenWeekPriceSummary");
}

Term Vocabulary::transaction_node(std::size_t k) const {
    return Term::iri(ns_ + "Transaction_" + std::to_string(k));
}

Term Vocabulary::summary_node(std::size_t k) const {
    return Term::iri(ns_ + "TenWeekPriceSummary_" + std::to_string(k));
}

Term Vocabulary::asset_node(std::size_t k) const {
    return Term::iri(ns_ + "Asset_" + std::to_string(k));
}

const std::array<std::string_view, 15>& Vocabulary::predicate_local_names() {
    static const std::array<std::string_view, 15> names = {
        "hasParticipant",     "involvesSecurity", "transactionValue",
        "transactionTimestamp", "type",           "priceOf",
        "periodEndPrice",     "periodAveragePrice", "periodHighPrice",
        "periodLowPrice",     "periodEndDate",    "identifier",
        "category",           "sector",           "industry"};
    return names;
}

std::optional<std::string> Vocabulary::predicate_local_name(const Term& predicate) const {
    if (!predicate.is_iri() || predicate.value.size() <= ns_.size() ||
        predicate.value.compare(0, ns_.size(), ns_) != 0) {
        return std::nullopt;
    }
    std::string local = predicate.value.substr(ns_.size());
    const auto& names = predicate_local_names();
    if (std::find(names.begin(), names.end(), local) == names.end()) return std::nullopt;
    return local;
}

std::vector<Term> list_entities(const Graph& graph, const Vocabulary& vocab,
                                const Term& type_value) {
    std::vector<Term> out;
    for (const auto& triple : graph.object_triples(type_value)) {
        if (triple.predicate == vocab.type()) out.push_back(triple.subject);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace flarko::kg
