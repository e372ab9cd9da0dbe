#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/term.hpp"

namespace flarko::kg {

namespace xsd {
inline const std::string kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline const std::string kDate = "http://www.w3.org/2001/XMLSchema#date";
}  // namespace xsd

// The fixed predicate set of the PKG/MKG schemas plus the entity classes,
// all minted under one configurable base IRI.
class Vocabulary {
public:
    explicit Vocabulary(std::string namespace_iri = "urn:flarko:");

    const std::string& ns() const { return ns_; }

    // Transaction predicates.
    const Term& has_participant() const { return has_participant_; }
    const Term& involves_security() const { return involves_security_; }
    const Term& transaction_value() const { return transaction_value_; }
    const Term& transaction_timestamp() const { return transaction_timestamp_; }
    const Term& type() const { return type_; }

    // Market predicates.
    const Term& price_of() const { return price_of_; }
    const Term& period_end_price() const { return period_end_price_; }
    const Term& period_average_price() const { return period_average_price_; }
    const Term& period_high_price() const { return period_high_price_; }
    const Term& period_low_price() const { return period_low_price_; }
    const Term& period_end_date() const { return period_end_date_; }
    const Term& identifier() const { return identifier_; }
    const Term& category() const { return category_; }
    const Term& sector() const { return sector_; }
    const Term& industry() const { return industry_; }

    // Entity classes (objects of `type` triples).
    const Term& transaction_class() const { return transaction_class_; }
    const Term& buy_transaction_class() const { return buy_transaction_class_; }
    const Term& sell_transaction_class() const { return sell_transaction_class_; }
    const Term& summary_class() const { return summary_class_; }

    // Numbered entity nodes.
    Term transaction_node(std::size_t k) const;
    Term summary_node(std::size_t k) const;
    Term asset_node(std::size_t k) const;

    static const std::array<std::string_view, 15>& predicate_local_names();

    // Local name if the IRI is one of this vocabulary's predicates.
    std::optional<std::string> predicate_local_name(const Term& predicate) const;

private:
    std::string ns_;
    Term has_participant_, involves_security_, transaction_value_, transaction_timestamp_, type_;
    Term price_of_, period_end_price_, period_average_price_, period_high_price_,
        period_low_price_, period_end_date_, identifier_, category_, sector_, industry_;
    Term transaction_class_, buy_transaction_class_, sell_transaction_class_, summary_class_;
};

// Sorted distinct subjects s with (s, type, type_value) in the graph.
std::vector<Term> list_entities(const Graph& graph, const Vocabulary& vocab,
                                const Term& type_value);

}  // namespace flarko::kg
