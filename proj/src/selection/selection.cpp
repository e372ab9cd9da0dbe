#include "flarko/selection/selection.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "flarko/llm/mock_generator.hpp"
#include "flarko/util/date.hpp"

namespace flarko::selection {

namespace {

constexpr const char* kSelectionInstructions =
    "You select entities from a candidate list for a financial assistant. "
    "Pick the candidates most relevant to the request below. "
    "Answer with the chosen entity IRIs only, one per line, nothing else.";

constexpr const char* kPriorContextHeader = "Context retrieved in the previous stage:";

// Latest date attached to a candidate: transactionTimestamp for PTR,
// periodEndDate for MR. Candidates without one sort oldest.
Date associated_date(const kg::Term& candidate, const SelectionRequest& req) {
    if (!req.source_graph || !req.vocab) return Date::from_days(INT32_MIN);
    const kg::Term& predicate = req.stage == Stage::Ptr
                                    ? req.vocab->transaction_timestamp()
                                    : req.vocab->period_end_date();
    Date best = Date::from_days(INT32_MIN);
    for (const auto& triple : req.source_graph->subject_triples(candidate)) {
        if (triple.predicate == predicate && triple.object.is_literal()) {
            if (auto d = Date::try_parse(triple.object.value); d && *d > best) best = *d;
        }
    }
    return best;
}

// Candidates ordered most-recent-first, IRI ties ascending.
std::vector<kg::Term> by_recency(const SelectionRequest& req) {
    std::vector<std::pair<Date, kg::Term>> dated;
    dated.reserve(req.candidates.size());
    for (const auto& c : req.candidates) dated.emplace_back(associated_date(c, req), c);
    std::sort(dated.begin(), dated.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<kg::Term> out;
    out.reserve(dated.size());
    for (auto& [_, term] : dated) out.push_back(std::move(term));
    return out;
}

// The grouping key for RoundRobinK: the asset a summary prices, or the
// security a transaction involves.
std::string group_key(const kg::Term& candidate, const SelectionRequest& req) {
    if (!req.source_graph || !req.vocab) return {};
    const kg::Term& predicate =
        req.stage == Stage::Mr ? req.vocab->price_of() : req.vocab->involves_security();
    for (const auto& triple : req.source_graph->subject_triples(candidate)) {
        if (triple.predicate == predicate) return triple.object.value;
    }
    return {};
}

bool iri_charish(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == ':' || c == '/' || c == '#' || c == '.' || c == '-' ||
           c == '~' || c == '%';
}

// Entity-shaped: full IRI (contains ':') or Name_suffix local-name shape.
bool looks_like_entity(const std::string& token) {
    if (token.find(':') != std::string::npos) return true;
    if (token.find('_') == std::string::npos) return false;
    const char first = token.front();
    return (first >= 'A' && first <= 'Z') || (first >= 'a' && first <= 'z');
}

}  // namespace

std::vector<llm::ChatMessage> build_selection_prompt(const SelectionRequest& req) {
    if (req.candidates.empty()) {
        throw std::invalid_argument("selection prompt needs a non-empty candidate list");
    }
    std::string system_text = kSelectionInstructions;
    if (req.prior_context) {
        system_text += "\n\n";
        system_text += kPriorContextHeader;
        system_text += '\n';
        system_text += *req.prior_context;
    }

    std::string user_text = req.user_request;
    user_text += "\n\n";
    user_text += llm::kCandidatesMarker;
    for (const auto& c : req.candidates) {
        user_text += '\n';
        user_text += c.value;
    }
    return {llm::system_message(std::move(system_text)), llm::user_message(std::move(user_text))};
}

SelectionResult parse_selection_response(const std::string& raw,
                                         std::span<const kg::Term> candidates) {
    SelectionResult result;
    result.raw_response = raw;

    std::unordered_map<std::string, std::size_t> by_iri;
    std::unordered_map<std::string, std::size_t> by_local;
    std::unordered_map<std::string, int> local_counts;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        by_iri.emplace(candidates[i].value, i);
        ++local_counts[candidates[i].local_name()];
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto local = candidates[i].local_name();
        if (local_counts[local] == 1) by_local.emplace(local, i);
    }

    std::vector<bool> taken(candidates.size(), false);
    std::vector<std::string> hallucinations;

    std::size_t pos = 0;
    while (pos < raw.size()) {
        while (pos < raw.size() && !iri_charish(raw[pos])) ++pos;
        std::size_t end = pos;
        while (end < raw.size() && iri_charish(raw[end])) ++end;
        if (end == pos) break;
        std::string token = raw.substr(pos, end - pos);
        pos = end;
        // Sentence punctuation sticks to tokens; peel it off the edges.
        while (!token.empty() && (token.back() == '.' || token.back() == ',' ||
                                  token.back() == ':' || token.back() == ';')) {
            token.pop_back();
        }
        while (!token.empty() && token.front() == ':') token.erase(0, 1);
        if (token.empty()) continue;

        std::size_t idx = candidates.size();
        if (auto it = by_iri.find(token); it != by_iri.end()) {
            idx = it->second;
        } else if (auto lt = by_local.find(token); lt != by_local.end()) {
            idx = lt->second;
        }
        if (idx < candidates.size()) {
            if (!taken[idx]) {
                taken[idx] = true;
                result.selected.push_back(candidates[idx]);
            }
        } else if (looks_like_entity(token)) {
            if (std::find(hallucinations.begin(), hallucinations.end(), token) ==
                hallucinations.end()) {
                hallucinations.push_back(std::move(token));
            }
        }
    }
    result.dropped_hallucinations = std::move(hallucinations);
    return result;
}

SelectionResult heuristic_select(const SelectionRequest& req, HeuristicPolicy policy, int k) {
    SelectionResult result;
    switch (policy) {
        case HeuristicPolicy::All:
            result.selected = req.candidates;
            break;
        case HeuristicPolicy::RecentK: {
            auto ordered = by_recency(req);
            if (static_cast<int>(ordered.size()) > k) ordered.resize(static_cast<size_t>(k));
            result.selected = std::move(ordered);
            break;
        }
        case HeuristicPolicy::RoundRobinK: {
            std::map<std::string, std::vector<kg::Term>> groups;
            for (const auto& c : by_recency(req)) groups[group_key(c, req)].push_back(c);
            bool more = true;
            for (std::size_t round = 0; more && static_cast<int>(result.selected.size()) < k;
                 ++round) {
                more = false;
                for (auto& [_, members] : groups) {
                    if (round >= members.size()) continue;
                    more = true;
                    result.selected.push_back(members[round]);
                    if (static_cast<int>(result.selected.size()) >= k) break;
                }
            }
            break;
        }
    }
    return result;
}

SelectionResult select_entities(const SelectionRequest& req, llm::Gateway& gateway,
                                const llm::CallContext& ctx) {
    SelectionRequest effective = req;
    auto prompt = build_selection_prompt(effective);
    auto estimate = llm::estimate_tokens(prompt, gateway.budget());

    // Over budget: keep only the most recent candidates that fit. The prompt
    // size is monotone in the candidate count, so binary-search the cut.
    if (estimate > gateway.budget().max_context_tokens && req.candidates.size() > 1) {
        const auto ordered = by_recency(req);
        std::size_t lo = 1, hi = ordered.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            effective.candidates.assign(ordered.begin(), ordered.begin() + mid);
            const auto mid_estimate =
                llm::estimate_tokens(build_selection_prompt(effective), gateway.budget());
            if (mid_estimate <= gateway.budget().max_context_tokens) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        effective.candidates.assign(ordered.begin(), ordered.begin() + lo);
        prompt = build_selection_prompt(effective);
        estimate = llm::estimate_tokens(prompt, gateway.budget());
    }

    const std::string raw = gateway.complete(prompt, ctx);
    SelectionResult result = parse_selection_response(raw, effective.candidates);
    result.truncated_candidates = req.candidates.size() - effective.candidates.size();
    result.prompt_tokens_estimate = estimate;

    if (result.selected.empty()) {
        const int k = static_cast<int>(std::min<std::size_t>(10, req.candidates.size()));
        auto fallback = heuristic_select(req, HeuristicPolicy::RecentK, k);
        result.selected = std::move(fallback.selected);
        result.used_fallback = true;
    }
    return result;
}

}  // namespace flarko::selection
