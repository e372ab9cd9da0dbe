#include "flarko/kg/sparql.hpp"

#include <stdexcept>

namespace flarko::kg {

std::string render_construct_query(std::span<const Term> nodes) {
    if (nodes.empty()) throw std::invalid_argument("node list must be non-empty");

    std::string node_list;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nodes[i].is_iri()) {
            throw std::invalid_argument("query nodes must be IRIs, got literal '" +
                                        nodes[i].value + "'");
        }
        if (i > 0) node_list += ' ';
        node_list += '<' + nodes[i].value + '>';
    }

    std::string query;
    query += "CONSTRUCT { ?s ?p ?o }\n";
    query += "WHERE {\n";
    query += "    VALUES ?node { " + node_list + " }\n";
    query += "    { ?node ?p ?o . BIND(?node as ?s) }\n";
    query += "    UNION\n";
    query += "    { ?s ?p ?node . BIND(?node as ?o) }\n";
    query += "}";
    return query;
}

}  // namespace flarko::kg
