#pragma once

// Shared test fixtures: temp dirs, a portable RNG, random graph generation,
// and independent oracles (brute-force extraction, JSON-LD reconstruction).
// Oracles here deliberately avoid the production code paths they check.

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"

namespace testsupport {

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("flarko_" + tag + "_" + std::to_string(counter_++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

// Random graphs over a small node/predicate pool, occasionally with literal
// objects (plain or typed).
inline flarko::kg::Graph random_graph(std::mt19937_64& rng, std::size_t max_triples,
                                      std::size_t node_pool = 30) {
    using flarko::kg::Term;
    flarko::kg::Graph graph;
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_triples)));
    for (std::size_t i = 0; i < n; ++i) {
        Term subject = Term::iri("urn:t:N" + std::to_string(uniform_int(rng, 0, static_cast<std::int64_t>(node_pool) - 1)));
        Term predicate = Term::iri("urn:t:p" + std::to_string(uniform_int(rng, 0, 5)));
        Term object;
        const auto roll = uniform_int(rng, 0, 9);
        if (roll < 6) {
            object = Term::iri("urn:t:N" + std::to_string(uniform_int(rng, 0, static_cast<std::int64_t>(node_pool) - 1)));
        } else if (roll < 8) {
            object = Term::literal("lit " + std::to_string(uniform_int(rng, 0, 99)));
        } else {
            object = Term::literal(std::to_string(uniform_int(rng, 0, 999)) + "." +
                                       std::to_string(uniform_int(rng, 0, 9)),
                                   "http://www.w3.org/2001/XMLSchema#decimal");
        }
        graph.insert(std::move(subject), std::move(predicate), std::move(object));
    }
    return graph;
}

inline std::vector<flarko::kg::Term> random_nodes(std::mt19937_64& rng, std::size_t max_nodes,
                                                  std::size_t node_pool = 30) {
    std::vector<flarko::kg::Term> nodes;
    const auto n = uniform_int(rng, 0, static_cast<std::int64_t>(max_nodes));
    for (std::int64_t i = 0; i < n; ++i) {
        nodes.push_back(flarko::kg::Term::iri(
            "urn:t:N" + std::to_string(uniform_int(rng, 0, static_cast<std::int64_t>(node_pool) - 1))));
    }
    return nodes;
}

// Oracle: the subject-or-object filter as a plain linear scan.
inline std::set<flarko::kg::Triple> brute_force_extract(
    const flarko::kg::Graph& graph, const std::vector<flarko::kg::Term>& nodes) {
    std::set<flarko::kg::Triple> out;
    for (const auto& triple : graph.triples()) {
        for (const auto& node : nodes) {
            if (triple.subject == node || triple.object == node) {
                out.insert(triple);
                break;
            }
        }
    }
    return out;
}

inline std::set<flarko::kg::Triple> triple_set(const flarko::kg::Graph& graph) {
    auto sorted = graph.sorted_triples();
    return {sorted.begin(), sorted.end()};
}

// Oracle: reconstruct triples from serialized JSON-LD with a plain JSON
// parser, resolving keys through @context.
inline std::set<flarko::kg::Triple> jsonld_reconstruct(const std::string& text) {
    using flarko::kg::Term;
    const auto doc = nlohmann::json::parse(text);
    std::map<std::string, std::string> context;
    for (const auto& [key, value] : doc.at("@context").items()) {
        context[key] = value.get<std::string>();
    }
    const auto resolve_key = [&](const std::string& key) {
        auto it = context.find(key);
        return it != context.end() ? it->second : key;
    };
    const auto to_term = [](const nlohmann::json& v) {
        if (v.is_string()) return Term::literal(v.get<std::string>());
        if (v.contains("@id")) return Term::iri(v.at("@id").get<std::string>());
        return Term::literal(v.at("@value").get<std::string>(), v.at("@type").get<std::string>());
    };

    std::set<flarko::kg::Triple> out;
    for (const auto& node : doc.at("@graph")) {
        const Term subject = Term::iri(node.at("@id").get<std::string>());
        for (const auto& [key, value] : node.items()) {
            if (key == "@id") continue;
            const Term predicate = Term::iri(resolve_key(key));
            if (value.is_array()) {
                for (const auto& item : value) {
                    out.emplace(subject, predicate, to_term(item));
                }
            } else {
                out.emplace(subject, predicate, to_term(value));
            }
        }
    }
    return out;
}

}  // namespace testsupport
