#pragma once

// Live backend: POST {base_url}/chat/completions with the de-facto chat API
// body {model, messages, temperature, top_p[, max_tokens]}.

#include "screenwright/gateway.hpp"
#include "screenwright/rate_limiter.hpp"

#include <chrono>
#include <memory>
#include <string>

namespace screenwright {

struct HttpOptions {
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
    std::chrono::seconds timeout{120};
    int transport_retries = 1;
    int rate_limit_waits = 3;   // 429 responses honoured before giving up
    std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>();

    // Reads LLM_BASE_URL and LLM_API_KEY. Throws ConfigError without a key.
    static HttpOptions from_env();
};

// Builds the JSON request body.
std::string chat_request_body(const ChatRequest& request);
// Extracts choices[0].message.content. Throws TransportError on other shapes.
std::string parse_chat_response(const std::string& body);

class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpOptions options);
    std::string complete(const ChatRequest& request) override;

private:
    HttpOptions options_;
    std::string host_;    // scheme://host[:port]
    std::string prefix_;  // path part of the base URL, no trailing '/'
};

} // namespace screenwright
