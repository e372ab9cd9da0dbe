#pragma once

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>

#include "flarko/llm/audit.hpp"
#include "flarko/llm/budget.hpp"
#include "flarko/llm/errors.hpp"
#include "flarko/llm/message.hpp"

namespace flarko::llm {

struct GenerationConfig {
    std::string endpoint_url;
    std::string model_name;
    double temperature = 0.0;
    int max_output_tokens = 256;
    int timeout_ms = 30000;
    int max_retries = 3;      // re-attempts after the first try
    int parallelism_cap = 4;  // max in-flight requests
};

// One attempt against a completion source. Throws TransportError for
// retryable failures, ProtocolError for unusable responses.
class GeneratorBackend {
public:
    virtual ~GeneratorBackend() = default;
    virtual std::string generate(std::span<const ChatMessage> messages,
                                 const GenerationConfig& config, const CallContext& ctx) = 0;
    // Mocks skip backoff sleeps.
    virtual bool wants_backoff() const { return true; }
};

// Bounds the number of threads inside the backend at once.
class AdmissionGate {
public:
    explicit AdmissionGate(int capacity) : capacity_(capacity > 0 ? capacity : 1) {}

    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return in_flight_ < capacity_; });
        ++in_flight_;
    }

    void release() {
        {
            std::lock_guard lock(mu_);
            --in_flight_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int capacity_;
    int in_flight_ = 0;
};

// Budget check, retry loop with exponential backoff, admission control, and
// audit recording around a backend. Message content is passed through
// untouched. Thread-safe.
class Gateway {
public:
    Gateway(std::shared_ptr<GeneratorBackend> backend, GenerationConfig config,
            ContextBudget budget, AuditLog* audit = nullptr);

    // Throws BudgetError before any backend call if the estimate exceeds the
    // budget; TransportError once retries are exhausted.
    std::string complete(std::span<const ChatMessage> messages, const CallContext& ctx = {});

    const GenerationConfig& config() const { return config_; }
    const ContextBudget& budget() const { return budget_; }

private:
    std::shared_ptr<GeneratorBackend> backend_;
    GenerationConfig config_;
    ContextBudget budget_;
    AuditLog* audit_;
    AdmissionGate gate_;
};

}  // namespace flarko::llm
