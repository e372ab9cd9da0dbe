#include "flarko/kg/graph.hpp"

#include <algorithm>

namespace flarko::kg {

bool Graph::insert(const Triple& triple) {
    if (present_.contains(triple)) return false;
    const auto index = static_cast<std::uint32_t>(triples_.size());
    triples_.push_back(triple);
    present_.insert(triple);
    by_subject_[triple.subject].push_back(index);
    by_object_[triple.object].push_back(index);
    return true;
}

std::vector<Triple> Graph::subject_triples(const Term& subject) const {
    std::vector<Triple> out;
    if (auto it = by_subject_.find(subject); it != by_subject_.end()) {
        out.reserve(it->second.size());
        for (auto i : it->second) out.push_back(triples_[i]);
    }
    return out;
}

std::vector<Triple> Graph::object_triples(const Term& object) const {
    std::vector<Triple> out;
    if (auto it = by_object_.find(object); it != by_object_.end()) {
        out.reserve(it->second.size());
        for (auto i : it->second) out.push_back(triples_[i]);
    }
    return out;
}

std::vector<Triple> Graph::sorted_triples() const {
    std::vector<Triple> out = triples_;
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::operator==(const Graph& other) const {
    if (triples_.size() != other.triples_.size()) return false;
    for (const auto& t : triples_) {
        if (!other.present_.contains(t)) return false;
    }
    return true;
}

Graph extract_subgraph(const Graph& graph, std::span<const Term> nodes) {
    std::vector<std::uint32_t> hits;
    for (const auto& node : nodes) {
        if (auto it = graph.by_subject_.find(node); it != graph.by_subject_.end()) {
            hits.insert(hits.end(), it->second.begin(), it->second.end());
        }
        if (auto it = graph.by_object_.find(node); it != graph.by_object_.end()) {
            hits.insert(hits.end(), it->second.begin(), it->second.end());
        }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

    Graph result;
    for (auto i : hits) result.insert(graph.triples_[i]);
    return result;
}

}  // namespace flarko::kg
