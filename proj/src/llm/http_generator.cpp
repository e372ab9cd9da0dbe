#include "flarko/llm/http_generator.hpp"

#include <cstdlib>
#include <nlohmann/json.hpp>

#ifdef FLARKO_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace flarko::llm {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ProtocolError("endpoint_url must include a scheme: '" + url + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    if (path_start == std::string::npos) {
        ep.origin = url;
        ep.path = "";
    } else {
        ep.origin = url.substr(0, path_start);
        ep.path = url.substr(path_start);
    }
    while (!ep.path.empty() && ep.path.back() == '/') ep.path.pop_back();
    if (ep.path.empty()) {
        ep.path = "/v1/chat/completions";
    } else if (!ep.path.ends_with("/chat/completions")) {
        ep.path += "/chat/completions";
    }
    return ep;
}

bool retryable_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

}  // namespace

std::string HttpBackend::generate(std::span<const ChatMessage> messages,
                                  const GenerationConfig& config, const CallContext& ctx) {
    (void)ctx;
    const Endpoint endpoint = split_endpoint(config.endpoint_url);

    nlohmann::ordered_json body;
    body["model"] = config.model_name;
    auto msgs = nlohmann::ordered_json::array();
    for (const auto& m : messages) {
        msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
    }
    body["messages"] = std::move(msgs);
    body["temperature"] = config.temperature;
    body["max_tokens"] = config.max_output_tokens;

    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(std::chrono::milliseconds(config.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config.timeout_ms));
    client.set_write_timeout(std::chrono::milliseconds(config.timeout_ms));

    httplib::Headers headers;
    if (const char* key = std::getenv("FLARKO_API_KEY"); key && *key) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    auto result = client.Post(endpoint.path, headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("request to " + endpoint.origin + endpoint.path + " failed: " +
                             httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300) {
        const std::string detail =
            "HTTP " + std::to_string(result->status) + ": " + result->body.substr(0, 500);
        if (retryable_status(result->status)) throw TransportError(detail);
        throw ProtocolError(detail);
    }

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("unparseable response body: ") + e.what());
    }
    if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
        parsed["choices"].empty()) {
        throw ProtocolError("response has no choices: " + result->body.substr(0, 500));
    }
    const auto& first = parsed["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string()) {
        throw ProtocolError("response choice has no message content");
    }
    return first["message"]["content"].get<std::string>();
}

}  // namespace flarko::llm
