#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"
#include "flarko/llm/generator.hpp"
#include "flarko/selection/selection.hpp"
#include "flarko/util/date.hpp"

namespace flarko::pipeline {

enum class Variant { FullInjection, Parallel, MultiStage };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

struct StageResult {
    selection::Stage stage = selection::Stage::Ptr;
    selection::SelectionResult selection;
    kg::Graph subgraph;
    std::string serialized;  // JSON-LD of the subgraph
};

struct InstanceSpec {
    std::string instance_id;
    std::string user;
    Date cutoff;
    Variant variant = Variant::MultiStage;
    std::string request_text;
};

struct RecommendationResult {
    std::string instance_id;
    std::string user;
    Date cutoff;
    Variant variant = Variant::MultiStage;
    std::vector<std::string> top3;  // <= 3 distinct known ISINs
    std::string raw_generation;
    std::optional<StageResult> ptr;
    std::optional<StageResult> mr;
    std::int64_t generation_prompt_tokens = 0;  // estimate of the final prompt
    std::vector<std::string> truncation_log;    // full-injection drops
};

// Stage 1: candidates are the PKG's transaction entities; the selected
// nodes' incident triples form the personal subgraph. An empty PKG yields
// an empty stage without consulting the selector.
StageResult run_ptr(const std::string& request, const kg::Graph& pkg,
                    selection::Selector& selector, const kg::Vocabulary& vocab,
                    const llm::CallContext& ctx);

// Stage 2: candidates are the MKG's summary entities. With a prior stage
// result its serialized subgraph rides along as context; the extraction node
// set additionally includes each selected summary's priceOf asset so the
// asset attribute triples are retrieved too.
StageResult run_mr(const std::string& request, const kg::Graph& mkg, const StageResult* prior,
                   selection::Selector& selector, const kg::Vocabulary& vocab,
                   const llm::CallContext& ctx);

// Two system messages (personal context, then market context) and one user
// message (request + fixed output-format instruction). Retrieval variants
// pass stage results; the full-injection baseline passes whole graphs, which
// are truncated oldest-node-first if the serialization exceeds the budget
// (drops recorded in truncation_log).
std::vector<llm::ChatMessage> assemble_generation_prompt(
    const std::string& request, const StageResult* ptr, const StageResult* mr,
    const kg::Graph* full_pkg, const kg::Graph* full_mkg, const kg::Vocabulary& vocab,
    const llm::ContextBudget& budget, std::vector<std::string>* truncation_log = nullptr);

// ISIN-shaped tokens in order of appearance, filtered to known assets,
// deduplicated, truncated to three. Never fails.
std::vector<std::string> parse_recommendations(const std::string& raw,
                                               const std::set<std::string>& known_assets);

// The identifier literals of the MKG's asset nodes.
std::set<std::string> known_asset_isins(const kg::Graph& mkg, const kg::Vocabulary& vocab);

// One backtest unit end to end. Selector and gateway errors propagate; the
// runner turns them into per-instance failure records.
RecommendationResult run_pipeline(const InstanceSpec& instance, const kg::Graph& pkg,
                                  const kg::Graph& mkg, selection::Selector& selector,
                                  llm::Gateway& gateway, const kg::Vocabulary& vocab);

}  // namespace flarko::pipeline
