#include "flarko/kg/jsonld.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>

namespace flarko::kg {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json object_term_to_json(const Term& term) {
    if (term.is_iri()) return ordered_json{{"@id", term.value}};
    if (term.datatype.empty()) return ordered_json(term.value);
    return ordered_json{{"@type", term.datatype}, {"@value", term.value}};
}

}  // namespace

std::string serialize_jsonld(const Graph& graph, const Vocabulary& vocab) {
    ordered_json context;
    {
        auto names = Vocabulary::predicate_local_names();
        std::array<std::string_view, 15> sorted = names;
        std::sort(sorted.begin(), sorted.end());
        for (auto local : sorted) {
            context[std::string(local)] = vocab.ns() + std::string(local);
        }
    }

    // subject IRI -> key -> object terms, everything lexicographically ordered.
    std::map<std::string, std::map<std::string, std::vector<Term>>> nodes;
    for (const auto& triple : graph.triples()) {
        std::string key = vocab.predicate_local_name(triple.predicate)
                              .value_or(triple.predicate.value);
        nodes[triple.subject.value][std::move(key)].push_back(triple.object);
    }

    ordered_json graph_array = ordered_json::array();
    for (auto& [subject, keys] : nodes) {
        ordered_json node;
        node["@id"] = subject;
        for (auto& [key, objects] : keys) {
            std::sort(objects.begin(), objects.end());
            if (objects.size() == 1) {
                node[key] = object_term_to_json(objects.front());
            } else {
                ordered_json arr = ordered_json::array();
                for (const auto& o : objects) arr.push_back(object_term_to_json(o));
                node[key] = std::move(arr);
            }
        }
        graph_array.push_back(std::move(node));
    }

    ordered_json doc;
    doc["@context"] = std::move(context);
    doc["@graph"] = std::move(graph_array);
    return doc.dump();
}

}  // namespace flarko::kg
