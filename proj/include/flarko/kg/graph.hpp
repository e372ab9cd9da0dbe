#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flarko/kg/term.hpp"

namespace flarko::kg {

// In-memory triple set with by-subject and by-object indexes.
// Triples keep insertion order for deterministic iteration; duplicates are
// no-ops. Once built, a Graph is treated as immutable and is safe for any
// number of concurrent readers.
class Graph {
public:
    Graph() = default;

    // Returns true if the triple was new. Literal subjects/predicates are
    // rejected by the Triple constructor.
    bool insert(const Triple& triple);
    bool insert(Term subject, Term predicate, Term object) {
        return insert(Triple(std::move(subject), std::move(predicate), std::move(object)));
    }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    bool contains(const Triple& t) const { return present_.contains(t); }

    std::span<const Triple> triples() const { return triples_; }

    // Triples whose subject/object equals the term (full term equality).
    std::vector<Triple> subject_triples(const Term& subject) const;
    std::vector<Triple> object_triples(const Term& object) const;

    std::vector<Triple> sorted_triples() const;

    // Set equality, independent of insertion order.
    bool operator==(const Graph& other) const;

private:
    std::vector<Triple> triples_;
    std::unordered_set<Triple, TripleHash> present_;
    std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_subject_;
    std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_object_;

    friend Graph extract_subgraph(const Graph&, std::span<const Term>);
};

// The CONSTRUCT-template semantics: all triples where any of the given
// nodes appears as subject or object. Unknown nodes match nothing.
Graph extract_subgraph(const Graph& graph, std::span<const Term> nodes);

}  // namespace flarko::kg
