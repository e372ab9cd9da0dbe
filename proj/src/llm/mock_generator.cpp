#include "flarko/llm/mock_generator.hpp"

#include <sstream>

#include "flarko/util/errors.hpp"
#include "flarko/util/isin.hpp"

namespace flarko::llm {

std::shared_ptr<MockBackend> MockBackend::from_spec(const nlohmann::json& spec) {
    const std::string kind = spec.value("kind", "auto");
    if (kind == "rules") {
        std::vector<Rule> rules;
        for (const auto& r : spec.value("rules", nlohmann::json::array())) {
            rules.push_back({r.value("contains", ""), r.value("response", ""),
                             r.value("fail_times", 0)});
        }
        return std::make_shared<MockBackend>(std::move(rules), spec.value("default", ""));
    }
    Kind k = Kind::Auto;
    if (kind == "take_candidates") k = Kind::TakeCandidates;
    else if (kind == "take_isins") k = Kind::TakeIsins;
    else if (kind == "auto") k = Kind::Auto;
    else throw ConfigError("unknown mock kind '" + kind + "'");
    return std::make_shared<MockBackend>(k, spec.value("k_select", 5),
                                         spec.value("k_recommend", 3));
}

std::string MockBackend::generate(std::span<const ChatMessage> messages,
                                  const GenerationConfig& config, const CallContext& ctx) {
    (void)config;
    switch (kind_) {
        case Kind::Rules: {
            for (std::size_t i = 0; i < rules_.size(); ++i) {
                const auto& rule = rules_[i];
                bool matched = rule.contains.empty();
                for (const auto& m : messages) {
                    if (matched) break;
                    matched = m.content.find(rule.contains) != std::string::npos;
                }
                if (!matched) continue;
                if (rule.fail_times > 0) {
                    const std::string key =
                        ctx.instance_id + '|' + ctx.stage + '|' + std::to_string(i);
                    std::lock_guard lock(mu_);
                    if (failures_used_[key] < rule.fail_times) {
                        ++failures_used_[key];
                        throw TransportError("scripted failure for rule " + std::to_string(i));
                    }
                }
                return rule.response;
            }
            return default_response_;
        }
        case Kind::TakeCandidates:
            return take_candidates(messages);
        case Kind::TakeIsins:
            return take_isins(messages);
        case Kind::Auto: {
            for (const auto& m : messages) {
                if (m.role == Role::User &&
                    m.content.find(kCandidatesMarker) != std::string::npos) {
                    return take_candidates(messages);
                }
            }
            return take_isins(messages);
        }
    }
    return default_response_;
}

std::string MockBackend::take_candidates(std::span<const ChatMessage> messages) const {
    const ChatMessage* last_user = nullptr;
    for (const auto& m : messages) {
        if (m.role == Role::User) last_user = &m;
    }
    if (!last_user) return "";
    std::istringstream in(last_user->content);
    std::string line;
    bool in_candidates = false;
    std::vector<std::string> picked;
    while (std::getline(in, line) && static_cast<int>(picked.size()) < k_select_) {
        if (!in_candidates) {
            in_candidates = line == kCandidatesMarker;
            continue;
        }
        if (!line.empty()) picked.push_back(line);
    }
    std::string out;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        if (i > 0) out += '\n';
        out += picked[i];
    }
    return out;
}

std::string MockBackend::take_isins(std::span<const ChatMessage> messages) const {
    std::vector<std::string> seen;
    for (const auto& m : messages) {
        for (auto& isin : extract_isin_tokens(m.content)) {
            if (static_cast<int>(seen.size()) >= k_recommend_) break;
            bool dup = false;
            for (const auto& s : seen) dup = dup || s == isin;
            if (!dup) seen.push_back(std::move(isin));
        }
    }
    std::string out;
    for (std::size_t i = 0; i < seen.size() && static_cast<int>(i) < k_recommend_; ++i) {
        if (i > 0) out += '\n';
        out += seen[i];
    }
    return out;
}

}  // namespace flarko::llm
