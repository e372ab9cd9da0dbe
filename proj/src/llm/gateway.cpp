#include "flarko/llm/generator.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

namespace flarko::llm {

Gateway::Gateway(std::shared_ptr<GeneratorBackend> backend, GenerationConfig config,
                 ContextBudget budget, AuditLog* audit)
    : backend_(std::move(backend)),
      config_(std::move(config)),
      budget_(budget),
      audit_(audit),
      gate_(config_.parallelism_cap) {}

std::string Gateway::complete(std::span<const ChatMessage> messages, const CallContext& ctx) {
    for (const auto& m : messages) {
        if (m.content.empty() && m.role != Role::Assistant) {
            throw std::invalid_argument("system/user message content must be non-empty");
        }
    }
    const auto estimate = estimate_tokens(messages, budget_);
    if (estimate > budget_.max_context_tokens) {
        throw BudgetError("prompt estimate " + std::to_string(estimate) +
                          " tokens exceeds budget " +
                          std::to_string(budget_.max_context_tokens));
    }

    const auto started = std::chrono::steady_clock::now();
    const int max_attempts = 1 + std::max(0, config_.max_retries);
    int attempts = 0;
    std::string last_error;
    while (attempts < max_attempts) {
        ++attempts;
        try {
            gate_.acquire();
            std::string response;
            try {
                response = backend_->generate(messages, config_, ctx);
            } catch (...) {
                gate_.release();
                throw;
            }
            gate_.release();
            if (audit_) {
                const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - started)
                                         .count();
                audit_->record(ctx, messages, response, attempts, latency);
            }
            return response;
        } catch (const TransportError& e) {
            last_error = e.what();
            if (attempts >= max_attempts) break;
            if (backend_->wants_backoff()) {
                const auto delay = std::chrono::milliseconds(
                    std::min<std::int64_t>(250LL << (attempts - 1), 4000));
                std::this_thread::sleep_for(delay);
            }
        }
    }
    throw TransportError("retries exhausted after " + std::to_string(attempts) +
                         " attempts: " + last_error);
}

}  // namespace flarko::llm
