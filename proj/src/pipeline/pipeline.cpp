#include "flarko/pipeline/pipeline.hpp"

#include <algorithm>
#include <map>

#include "flarko/kg/jsonld.hpp"
#include "flarko/util/isin.hpp"

namespace flarko::pipeline {

namespace {

constexpr const char* kPersonalContextHeader =
    "Investor transaction history (JSON-LD):\n";
constexpr const char* kMarketContextHeader = "Market data (JSON-LD):\n";
constexpr const char* kOutputInstruction =
    "List exactly three ISINs, one per line, most recommended first.";

StageResult empty_stage(selection::Stage stage, const kg::Vocabulary& vocab) {
    StageResult result;
    result.stage = stage;
    result.serialized = kg::serialize_jsonld(result.subgraph, vocab);
    return result;
}

// Entity nodes of a class ordered oldest-first by a date predicate, for the
// full-injection truncation rule.
std::vector<std::pair<Date, kg::Term>> dated_nodes(const kg::Graph& graph,
                                                   const kg::Vocabulary& vocab,
                                                   const kg::Term& node_class,
                                                   const kg::Term& date_predicate) {
    std::vector<std::pair<Date, kg::Term>> out;
    for (const auto& node : kg::list_entities(graph, vocab, node_class)) {
        Date latest = Date::from_days(INT32_MIN);
        for (const auto& t : graph.subject_triples(node)) {
            if (t.predicate == date_predicate && t.object.is_literal()) {
                if (auto d = Date::try_parse(t.object.value); d && *d > latest) latest = *d;
            }
        }
        out.emplace_back(latest, node);
    }
    std::sort(out.begin(), out.end());
    return out;
}

kg::Graph without_subjects(const kg::Graph& graph, const std::set<kg::Term>& dropped) {
    kg::Graph out;
    for (const auto& t : graph.triples()) {
        if (!dropped.contains(t.subject)) out.insert(t);
    }
    return out;
}

}  // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::FullInjection: return "full_injection";
        case Variant::Parallel: return "parallel";
        case Variant::MultiStage: return "multi_stage";
    }
    return "multi_stage";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    if (name == "full_injection") return Variant::FullInjection;
    if (name == "parallel") return Variant::Parallel;
    if (name == "multi_stage") return Variant::MultiStage;
    return std::nullopt;
}

StageResult run_ptr(const std::string& request, const kg::Graph& pkg,
                    selection::Selector& selector, const kg::Vocabulary& vocab,
                    const llm::CallContext& ctx) {
    const auto candidates = kg::list_entities(pkg, vocab, vocab.transaction_class());
    if (candidates.empty()) return empty_stage(selection::Stage::Ptr, vocab);

    selection::SelectionRequest req;
    req.user_request = request;
    req.candidates = candidates;
    req.stage = selection::Stage::Ptr;
    req.source_graph = &pkg;
    req.vocab = &vocab;

    StageResult result;
    result.stage = selection::Stage::Ptr;
    result.selection = selector.select(req, ctx);
    result.subgraph = kg::extract_subgraph(pkg, result.selection.selected);
    result.serialized = kg::serialize_jsonld(result.subgraph, vocab);
    return result;
}

StageResult run_mr(const std::string& request, const kg::Graph& mkg, const StageResult* prior,
                   selection::Selector& selector, const kg::Vocabulary& vocab,
                   const llm::CallContext& ctx) {
    const auto candidates = kg::list_entities(mkg, vocab, vocab.summary_class());
    if (candidates.empty()) return empty_stage(selection::Stage::Mr, vocab);

    selection::SelectionRequest req;
    req.user_request = request;
    req.candidates = candidates;
    req.stage = selection::Stage::Mr;
    req.source_graph = &mkg;
    req.vocab = &vocab;
    if (prior) req.prior_context = prior->serialized;

    StageResult result;
    result.stage = selection::Stage::Mr;
    result.selection = selector.select(req, ctx);

    // The template keyed on summaries alone would miss the asset attribute
    // triples; pull each linked asset into the node set.
    std::vector<kg::Term> nodes = result.selection.selected;
    for (const auto& summary : result.selection.selected) {
        for (const auto& t : mkg.subject_triples(summary)) {
            if (t.predicate == vocab.price_of() && t.object.is_iri()) {
                if (std::find(nodes.begin(), nodes.end(), t.object) == nodes.end()) {
                    nodes.push_back(t.object);
                }
            }
        }
    }
    result.subgraph = kg::extract_subgraph(mkg, nodes);
    result.serialized = kg::serialize_jsonld(result.subgraph, vocab);
    return result;
}

std::vector<llm::ChatMessage> assemble_generation_prompt(
    const std::string& request, const StageResult* ptr, const StageResult* mr,
    const kg::Graph* full_pkg, const kg::Graph* full_mkg, const kg::Vocabulary& vocab,
    const llm::ContextBudget& budget, std::vector<std::string>* truncation_log) {
    const bool retrieval_mode = ptr != nullptr && mr != nullptr;
    const bool full_mode = full_pkg != nullptr && full_mkg != nullptr;
    if (retrieval_mode == full_mode) {
        throw std::invalid_argument(
            "pass either both stage results or both full graphs, not a mix");
    }

    const auto assemble = [&](const std::string& pkg_jsonld, const std::string& mkg_jsonld) {
        std::vector<llm::ChatMessage> messages;
        messages.push_back(llm::system_message(kPersonalContextHeader + pkg_jsonld));
        messages.push_back(llm::system_message(kMarketContextHeader + mkg_jsonld));
        messages.push_back(llm::user_message(request + "\n\n" + kOutputInstruction));
        return messages;
    };

    if (retrieval_mode) {
        auto messages = assemble(ptr->serialized, mr->serialized);
        const auto estimate = llm::estimate_tokens(messages, budget);
        if (estimate > budget.max_context_tokens) {
            throw llm::BudgetError("retrieved-context prompt estimate " +
                                   std::to_string(estimate) + " exceeds budget " +
                                   std::to_string(budget.max_context_tokens));
        }
        return messages;
    }

    // Full injection: drop the oldest transaction or summary node, whichever
    // is older (transactions on ties), until the prompt fits.
    auto txns = dated_nodes(*full_pkg, vocab, vocab.transaction_class(),
                            vocab.transaction_timestamp());
    auto summaries =
        dated_nodes(*full_mkg, vocab, vocab.summary_class(), vocab.period_end_date());
    std::set<kg::Term> dropped_txns, dropped_summaries;
    std::size_t next_txn = 0, next_summary = 0;

    kg::Graph pkg_view = *full_pkg;
    kg::Graph mkg_view = *full_mkg;
    while (true) {
        auto messages =
            assemble(kg::serialize_jsonld(pkg_view, vocab), kg::serialize_jsonld(mkg_view, vocab));
        if (llm::estimate_tokens(messages, budget) <= budget.max_context_tokens) {
            return messages;
        }
        const bool txn_left = next_txn < txns.size();
        const bool summary_left = next_summary < summaries.size();
        if (!txn_left && !summary_left) {
            throw llm::BudgetError("full-injection prompt cannot fit the budget even with all "
                                   "transactions and summaries dropped");
        }
        const bool drop_txn =
            txn_left && (!summary_left || txns[next_txn].first <= summaries[next_summary].first);
        if (drop_txn) {
            dropped_txns.insert(txns[next_txn].second);
            if (truncation_log) {
                truncation_log->push_back("dropped " + txns[next_txn].second.value);
            }
            ++next_txn;
            pkg_view = without_subjects(*full_pkg, dropped_txns);
        } else {
            dropped_summaries.insert(summaries[next_summary].second);
            if (truncation_log) {
                truncation_log->push_back("dropped " + summaries[next_summary].second.value);
            }
            ++next_summary;
            mkg_view = without_subjects(*full_mkg, dropped_summaries);
        }
    }
}

std::vector<std::string> parse_recommendations(const std::string& raw,
                                               const std::set<std::string>& known_assets) {
    std::vector<std::string> out;
    for (auto& token : extract_isin_tokens(raw)) {
        if (out.size() >= 3) break;
        if (!known_assets.contains(token)) continue;
        if (std::find(out.begin(), out.end(), token) != out.end()) continue;
        out.push_back(std::move(token));
    }
    return out;
}

std::set<std::string> known_asset_isins(const kg::Graph& mkg, const kg::Vocabulary& vocab) {
    std::set<std::string> out;
    for (const auto& t : mkg.triples()) {
        if (t.predicate == vocab.identifier() && t.object.is_literal()) {
            out.insert(t.object.value);
        }
    }
    return out;
}

RecommendationResult run_pipeline(const InstanceSpec& instance, const kg::Graph& pkg,
                                  const kg::Graph& mkg, selection::Selector& selector,
                                  llm::Gateway& gateway, const kg::Vocabulary& vocab) {
    RecommendationResult result;
    result.instance_id = instance.instance_id;
    result.user = instance.user;
    result.cutoff = instance.cutoff;
    result.variant = instance.variant;

    std::vector<llm::ChatMessage> prompt;
    if (instance.variant == Variant::FullInjection) {
        prompt = assemble_generation_prompt(instance.request_text, nullptr, nullptr, &pkg, &mkg,
                                            vocab, gateway.budget(), &result.truncation_log);
    } else {
        result.ptr = run_ptr(instance.request_text, pkg, selector, vocab,
                             {instance.instance_id, "ptr"});
        const StageResult* prior =
            instance.variant == Variant::MultiStage ? &*result.ptr : nullptr;
        result.mr = run_mr(instance.request_text, mkg, prior, selector, vocab,
                           {instance.instance_id, "mr"});
        prompt = assemble_generation_prompt(instance.request_text, &*result.ptr, &*result.mr,
                                            nullptr, nullptr, vocab, gateway.budget());
    }
    result.generation_prompt_tokens = llm::estimate_tokens(prompt, gateway.budget());
    result.raw_generation = gateway.complete(prompt, {instance.instance_id, "generation"});
    result.top3 = parse_recommendations(result.raw_generation, known_asset_isins(mkg, vocab));
    return result;
}

}  // namespace flarko::pipeline
