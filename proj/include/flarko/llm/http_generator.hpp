#pragma once

#include "flarko/llm/generator.hpp"

namespace flarko::llm {

// OpenAI-compatible chat-completions client. The bearer token is read from
// the FLARKO_API_KEY environment variable when present. Retryable failures
// (connect errors, timeouts, 408/429/5xx) surface as TransportError; anything
// answered but unusable surfaces as ProtocolError.
//
// endpoint_url: scheme://host[:port][/prefix]. A bare host or "/" prefix
// posts to /v1/chat/completions; a prefix already ending in
// /chat/completions is used as-is; any other prefix gets /chat/completions
// appended.
class HttpBackend : public GeneratorBackend {
public:
    std::string generate(std::span<const ChatMessage> messages, const GenerationConfig& config,
                         const CallContext& ctx) override;
};

}  // namespace flarko::llm
