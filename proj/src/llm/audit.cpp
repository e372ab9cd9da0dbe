#include "flarko/llm/audit.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace flarko::llm {

AuditLog::AuditLog(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::app);
    if (!out_) throw std::runtime_error("cannot open audit log: " + path.string());
}

void AuditLog::record(const CallContext& ctx, std::span<const ChatMessage> messages,
                      const std::string& response, int attempts, std::int64_t latency_ms) {
    nlohmann::ordered_json entry;
    entry["instance_id"] = ctx.instance_id;
    entry["stage"] = ctx.stage;
    auto msgs = nlohmann::ordered_json::array();
    for (const auto& m : messages) {
        msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
    }
    entry["messages"] = std::move(msgs);
    entry["response"] = response;
    entry["attempts"] = attempts;
    entry["latency_ms"] = latency_ms;

    std::lock_guard lock(mu_);
    out_ << entry.dump() << '\n';
    out_.flush();
}

}  // namespace flarko::llm
