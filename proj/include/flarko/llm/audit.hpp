#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <span>
#include <string>

#include "flarko/llm/message.hpp"

namespace flarko::llm {

// Which pipeline call this is, for the audit trail.
struct CallContext {
    std::string instance_id;
    std::string stage;  // "ptr" | "mr" | "generation" | test labels
};

// Append-only JSON-lines transcript of every generator call:
// {instance_id, stage, messages, response, attempts, latency_ms}.
// Thread-safe; single writer per file.
class AuditLog {
public:
    explicit AuditLog(const std::filesystem::path& path);

    void record(const CallContext& ctx, std::span<const ChatMessage> messages,
                const std::string& response, int attempts, std::int64_t latency_ms);

private:
    std::mutex mu_;
    std::ofstream out_;
};

}  // namespace flarko::llm
