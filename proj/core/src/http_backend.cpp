#include "screenwright/http_backend.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace screenwright {

HttpOptions HttpOptions::from_env() {
    HttpOptions opts;
    if (const char* url = std::getenv("LLM_BASE_URL"); url && *url) {
        opts.base_url = url;
    }
    const char* key = std::getenv("LLM_API_KEY");
    if (!key || !*key) {
        throw Error(ErrorCode::ConfigError, "LLM_API_KEY is not set");
    }
    opts.api_key = key;
    return opts;
}

std::string chat_request_body(const ChatRequest& request) {
    nlohmann::json messages = nlohmann::json::array();
    if (!request.system.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system}});
    }
    for (const auto& turn : request.turns) {
        messages.push_back({{"role", to_string(turn.role)}, {"content", turn.content}});
    }
    nlohmann::json body = {
        {"model", request.params.model_id},
        {"messages", std::move(messages)},
        {"temperature", request.params.temperature},
        {"top_p", request.params.top_p},
    };
    if (request.params.max_tokens) {
        body["max_tokens"] = *request.params.max_tokens;
    }
    return body.dump();
}

std::string parse_chat_response(const std::string& body) {
    try {
        const auto j = nlohmann::json::parse(body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::TransportError, std::string("unexpected response body: ") + e.what());
    }
}

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
    std::string url = options_.base_url;
    while (!url.empty() && url.back() == '/') {
        url.pop_back();
    }
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::ConfigError, "base URL needs a scheme: " + options_.base_url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    host_ = url.substr(0, path_start);
    prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
    if (!options_.clock) {
        options_.clock = std::make_shared<SteadyClock>();
    }
}

std::string HttpBackend::complete(const ChatRequest& request) {
    httplib::Client client(host_);
    const auto secs = static_cast<time_t>(options_.timeout.count());
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);
    if (!options_.api_key.empty()) {
        client.set_bearer_token_auth(options_.api_key);
    }
    const std::string path = prefix_ + "/chat/completions";
    const std::string body = chat_request_body(request);

    int transport_left = options_.transport_retries;
    int waits_left = options_.rate_limit_waits;
    for (;;) {
        auto res = client.Post(path, body, "application/json");
        if (!res) {
            if (transport_left-- > 0) {
                continue;
            }
            throw Error(ErrorCode::TransportError,
                        "request to " + host_ + path + " failed: " + httplib::to_string(res.error()));
        }
        if (res->status == 429) {
            if (waits_left-- <= 0) {
                throw Error(ErrorCode::RateLimited, "rate limited by " + host_);
            }
            long wait = 1;
            if (res->has_header("Retry-After")) {
                wait = std::strtol(res->get_header_value("Retry-After").c_str(), nullptr, 10);
            }
            options_.clock->sleep_for(std::chrono::seconds(std::max(wait, 0L)));
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            throw Error(ErrorCode::TransportError,
                        "HTTP " + std::to_string(res->status) + " from " + host_ + path);
        }
        return parse_chat_response(res->body);
    }
}

} // namespace screenwright
