#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flarko::kg {

enum class TermKind { Iri, Literal };

// An RDF-style term: an IRI or a literal with an optional datatype IRI.
// An empty datatype means a plain string literal.
struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;
    std::string datatype;

    static Term iri(std::string v) {
        if (v.empty()) throw std::invalid_argument("IRI must be non-empty");
        for (char c : v) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                throw std::invalid_argument("IRI must not contain whitespace: '" + v + "'");
            }
        }
        return Term{TermKind::Iri, std::move(v), {}};
    }

    static Term literal(std::string v) { return Term{TermKind::Literal, std::move(v), {}}; }

    static Term literal(std::string v, std::string datatype_iri) {
        return Term{TermKind::Literal, std::move(v), std::move(datatype_iri)};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_literal() const { return kind == TermKind::Literal; }

    // Suffix after the last ':', '/', or '#'; the whole value if none apply.
    std::string local_name() const {
        const auto pos = value.find_last_of(":/#");
        if (pos == std::string::npos || pos + 1 >= value.size()) return value;
        return value.substr(pos + 1);
    }

    auto operator<=>(const Term&) const = default;
};

struct TermHash {
    std::size_t operator()(const Term& t) const {
        std::size_t h = std::hash<std::string>{}(t.value);
        h ^= std::hash<std::string>{}(t.datatype) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(t.kind);
    }
};

// Subject and predicate must be IRIs; the object may be any term.
struct Triple {
    Term subject;
    Term predicate;
    Term object;

    Triple(Term s, Term p, Term o)
        : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
        if (!subject.is_iri()) throw std::invalid_argument("triple subject must be an IRI");
        if (!predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
    }

    auto operator<=>(const Triple&) const = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const {
        TermHash h;
        std::size_t s = h(t.subject);
        s ^= h(t.predicate) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        s ^= h(t.object) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        return s;
    }
};

}  // namespace flarko::kg
