#pragma once

#include <cstdint>
#include <span>

#include "flarko/llm/message.hpp"

namespace flarko::llm {

// Character-count token estimate: model-agnostic and conservative.
struct ContextBudget {
    std::int64_t max_context_tokens = 8192;
    std::int64_t chars_per_token = 4;  // must be > 0
};

// Sum over messages of ceil(content chars / divisor).
inline std::int64_t estimate_tokens(std::span<const ChatMessage> messages,
                                    const ContextBudget& budget) {
    std::int64_t total = 0;
    for (const auto& m : messages) {
        total += (static_cast<std::int64_t>(m.content.size()) + budget.chars_per_token - 1) /
                 budget.chars_per_token;
    }
    return total;
}

}  // namespace flarko::llm
