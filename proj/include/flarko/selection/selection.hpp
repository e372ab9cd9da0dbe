#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flarko/kg/graph.hpp"
#include "flarko/kg/vocabulary.hpp"
#include "flarko/llm/generator.hpp"
#include "flarko/llm/message.hpp"

namespace flarko::selection {

enum class Stage { Ptr, Mr };

inline const char* stage_name(Stage s) { return s == Stage::Ptr ? "ptr" : "mr"; }

struct SelectionRequest {
    std::string user_request;
    std::vector<kg::Term> candidates;  // entity IRIs
    std::optional<std::string> prior_context;  // earlier stage's serialized subgraph
    Stage stage = Stage::Ptr;
    // Needed by date-based policies (RecentK, RoundRobinK, fallback).
    const kg::Graph* source_graph = nullptr;
    const kg::Vocabulary* vocab = nullptr;
};

struct SelectionResult {
    std::vector<kg::Term> selected;  // subset of candidates, first-mention order
    std::string raw_response;
    std::vector<std::string> dropped_hallucinations;
    bool used_fallback = false;
    std::size_t truncated_candidates = 0;  // dropped before prompting, for budget
    std::int64_t prompt_tokens_estimate = 0;
};

// System message: task instructions plus the prior context verbatim when
// present. User message: the request, then a "Candidates:" marker, then one
// IRI per line. Byte-deterministic for fixed inputs; throws on empty
// candidates.
std::vector<llm::ChatMessage> build_selection_prompt(const SelectionRequest& req);

// Total on any input: scans for candidate IRIs (and their local-name
// suffixes) on token boundaries; selected keeps first-occurrence order,
// deduplicated. Entity-shaped tokens matching no candidate are recorded as
// dropped hallucinations.
SelectionResult parse_selection_response(const std::string& raw,
                                         std::span<const kg::Term> candidates);

enum class HeuristicPolicy { All, RecentK, RoundRobinK };

// All: every candidate. RecentK: the k candidates with the latest associated
// date (transactionTimestamp for PTR, periodEndDate for MR), recency-major,
// IRI ties ascending. RoundRobinK: up to k candidates spread across distinct
// assets (priceOf for MR, involvesSecurity for PTR).
SelectionResult heuristic_select(const SelectionRequest& req, HeuristicPolicy policy, int k);

// prompt -> complete -> parse. Truncates the candidate list by recency when
// the prompt would exceed the gateway budget; falls back to RecentK
// (k = min(10, |candidates|)) when the model selects nothing.
SelectionResult select_entities(const SelectionRequest& req, llm::Gateway& gateway,
                                const llm::CallContext& ctx = {});

// Stage-selection strategy handed to the pipeline.
class Selector {
public:
    virtual ~Selector() = default;
    virtual SelectionResult select(const SelectionRequest& req, const llm::CallContext& ctx) = 0;
};

class LlmSelector : public Selector {
public:
    explicit LlmSelector(llm::Gateway& gateway) : gateway_(gateway) {}
    SelectionResult select(const SelectionRequest& req, const llm::CallContext& ctx) override {
        return select_entities(req, gateway_, ctx);
    }

private:
    llm::Gateway& gateway_;
};

class HeuristicSelector : public Selector {
public:
    HeuristicSelector(HeuristicPolicy policy, int k) : policy_(policy), k_(k) {}
    SelectionResult select(const SelectionRequest& req, const llm::CallContext&) override {
        return heuristic_select(req, policy_, k_);
    }

private:
    HeuristicPolicy policy_;
    int k_;
};

}  // namespace flarko::selection
