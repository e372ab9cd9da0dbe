#pragma once

#include <stdexcept>
#include <string>

namespace flarko::llm {

// Prompt exceeds the context budget; raised before any network call.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Transient transport failure (connection refused, timeout, 5xx); retryable.
struct TransportError : std::runtime_error {
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// The endpoint answered but the body was not a usable completion.
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flarko::llm
