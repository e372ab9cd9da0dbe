#pragma once

#include <string>
#include <string_view>

namespace flarko::llm {

enum class Role { System, User, Assistant };

inline std::string_view role_name(Role role) {
    switch (role) {
        case Role::System: return "system";
        case Role::User: return "user";
        case Role::Assistant: return "assistant";
    }
    return "user";
}

struct ChatMessage {
    Role role = Role::User;
    std::string content;
};

inline ChatMessage system_message(std::string content) {
    return {Role::System, std::move(content)};
}

inline ChatMessage user_message(std::string content) {
    return {Role::User, std::move(content)};
}

}  // namespace flarko::llm
