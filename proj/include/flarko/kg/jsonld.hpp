#pragma once

#include <string>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"

namespace flarko::kg {

// Compacted JSON-LD: {"@context": {local -> predicate IRI}, "@graph": [...]}.
// One node object per subject with an "@id" field; predicate keys are the
// vocabulary local names (full IRIs for foreign predicates); multi-valued
// predicates become arrays. Subjects, keys, and array elements are ordered
// lexicographically, so output is byte-deterministic.
//
// Object terms: IRIs render as {"@id": iri}, plain literals as JSON strings,
// typed literals as {"@type": datatype, "@value": text}.
std::string serialize_jsonld(const Graph& graph, const Vocabulary& vocab);

}  // namespace flarko::kg
