#pragma once

#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <unordered_map>
#include <vector>

#include "flarko/llm/generator.hpp"

namespace flarko::llm {

// Deterministic scripted backend. Four behaviors:
//
//   rules            first rule whose `contains` substring appears in any
//                    message wins; `fail_times` > 0 makes the rule throw
//                    TransportError that many times per (instance, stage)
//                    before answering. Falls back to `default_response`.
//   take_candidates  echoes the first k lines following the "Candidates:"
//                    marker of the last user message.
//   take_isins       returns the first k distinct ISIN-shaped tokens found
//                    across all messages.
//   auto             take_candidates when a candidates marker is present,
//                    take_isins otherwise. The default for end-to-end runs.
class MockBackend : public GeneratorBackend {
public:
    enum class Kind { Rules, TakeCandidates, TakeIsins, Auto };

    struct Rule {
        std::string contains;
        std::string response;
        int fail_times = 0;
    };

    MockBackend() = default;
    explicit MockBackend(Kind kind, int k_select = 5, int k_recommend = 3)
        : kind_(kind), k_select_(k_select), k_recommend_(k_recommend) {}
    MockBackend(std::vector<Rule> rules, std::string default_response)
        : kind_(Kind::Rules),
          rules_(std::move(rules)),
          default_response_(std::move(default_response)) {}

    // Spec shape: {"kind": "...", "k_select": n, "k_recommend": n,
    //              "rules": [{"contains", "response", "fail_times"}], "default": "..."}
    static std::shared_ptr<MockBackend> from_spec(const nlohmann::json& spec);

    std::string generate(std::span<const ChatMessage> messages, const GenerationConfig& config,
                         const CallContext& ctx) override;
    bool wants_backoff() const override { return false; }

private:
    std::string take_candidates(std::span<const ChatMessage> messages) const;
    std::string take_isins(std::span<const ChatMessage> messages) const;

    Kind kind_ = Kind::Auto;
    std::vector<Rule> rules_;
    std::string default_response_;
    int k_select_ = 5;
    int k_recommend_ = 3;

    std::mutex mu_;
    std::unordered_map<std::string, int> failures_used_;
};

// The marker line build_selection_prompt writes before the candidate list;
// the auto mock keys off it.
inline constexpr const char* kCandidatesMarker = "Candidates:";

}  // namespace flarko::llm
