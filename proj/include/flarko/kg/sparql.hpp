#pragma once

#include <span>
#include <string>

#include "flarko/kg/term.hpp"

namespace flarko::kg {

// Renders the CONSTRUCT query whose evaluation is extract_subgraph:
//
//   CONSTRUCT { ?s ?p ?o }
//   WHERE {
//       VALUES ?node { <iri-1> <iri-2> ... }
//       { ?node ?p ?o . BIND(?node as ?s) }
//       UNION
//       { ?s ?p ?node . BIND(?node as ?o) }
//   }
//
// Nodes are space-delimited angle-bracketed IRIs in input order.
// Throws std::invalid_argument on an empty node list or literal nodes.
std::string render_construct_query(std::span<const Term> nodes);

}  // namespace flarko::kg
