#pragma once

// Chat-completion gateway: one blocking call per request, parse-and-retry for
// structured output, optional rate limiting, and per-stage failure records.

#include "screenwright/error.hpp"
#include "screenwright/tags.hpp"

#include <atomic>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace screenwright {

class RateLimiter;

struct GenParams {
    std::string model_id = "gpt-4-0613";
    double temperature = 1.0;
    double top_p = 0.999;
    std::optional<int> max_tokens;

    // Throws InvalidValue outside 0 <= temperature <= 2, 0 < top_p <= 1.
    void validate() const;
    bool operator==(const GenParams&) const = default;
};

enum class Role { User, Assistant };
std::string_view to_string(Role role);

struct ChatTurn {
    Role role = Role::User;
    std::string content;

    bool operator==(const ChatTurn&) const = default;
};

struct ChatRequest {
    std::string system;
    std::vector<ChatTurn> turns;
    GenParams params;

    // Turns must alternate user/assistant, starting and ending with user.
    void validate() const;
    // Content of the final user turn.
    const std::string& last_user() const;
};

// Stable JSON rendering of the fields that identify a request, and its SHA-256.
std::string canonical_request_json(const ChatRequest& request);
std::string request_hash(const ChatRequest& request);

enum class Stage { Stage1_Planning, Stage2_Expansion, Stage3_Screenplay, Eval, Synth };
inline constexpr std::size_t kStageCount = 5;
std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view text);

struct FailureRecord {
    Stage stage = Stage::Stage1_Planning;
    int attempt = 1;
    std::string error_kind;
    std::string story_id;
};

struct StageFailureRecord {
    Stage stage = Stage::Stage1_Planning;
    std::string story_id;
    std::string error_kind;
};

// Thread-safe sink for failed attempts and for stages that gave up.
class FailureLog {
public:
    void record(FailureRecord record);
    void record_stage_failure(StageFailureRecord record);

    std::vector<FailureRecord> records() const;
    std::vector<StageFailureRecord> stage_failures() const;
    std::size_t attempt_failures(Stage stage) const;
    // Distinct stories whose `stage` failed.
    std::size_t failed_stories(Stage stage) const;
    void clear();

private:
    mutable std::mutex mutex_;
    std::vector<FailureRecord> records_;
    std::vector<StageFailureRecord> stage_failures_;
};

class Backend {
public:
    virtual ~Backend() = default;
    // Returns the assistant text verbatim. Throws TransportError, RateLimited
    // or ReplayMiss.
    virtual std::string complete(const ChatRequest& request) = 0;
};

struct CallContext {
    Stage stage = Stage::Stage1_Planning;
    std::string story_id;
};

template <class T>
struct Completion {
    T value;
    std::string raw;  // assistant text of the accepted attempt
    int attempts = 1;
};

class Gateway {
public:
    inline static constexpr int kDefaultMaxRetries = 2;

    Gateway(std::shared_ptr<Backend> backend, std::shared_ptr<FailureLog> failures = nullptr,
            std::shared_ptr<RateLimiter> limiter = nullptr, int max_retries = kDefaultMaxRetries);

    std::string complete(const ChatRequest& request);

    // Parses the reply against `schema`, resending the identical request on
    // parse errors. Throws StructuredOutputFailure once max_retries+1 attempts
    // have failed; the cause is the last attempt's error code.
    TagDocument complete_structured(const ChatRequest& request, const TagSchema& schema,
                                    int max_retries, const CallContext& context = {});
    TagDocument complete_structured(const ChatRequest& request, const TagSchema& schema,
                                    const CallContext& context = {});

    // Parse then extract. Extraction errors whose code is in `retry_on` are
    // treated like parse errors; any other Error is logged and rethrown.
    template <class T>
    Completion<T> complete_as(const ChatRequest& request, const TagSchema& schema,
                              const CallContext& context,
                              const std::function<T(const TagDocument&)>& extract,
                              std::initializer_list<ErrorCode> retry_on = {},
                              std::optional<int> max_retries = std::nullopt) {
        std::optional<T> value;
        auto accepted = run_validated(
            request, schema, context,
            [&](const TagDocument& doc) { value.emplace(extract(doc)); },
            std::vector<ErrorCode>(retry_on), max_retries.value_or(max_retries_));
        return Completion<T>{std::move(*value), std::move(accepted.first), accepted.second};
    }

    int max_retries() const noexcept { return max_retries_; }
    const std::shared_ptr<FailureLog>& failures() const noexcept { return failures_; }
    std::size_t calls() const noexcept { return calls_.load(); }

private:
    std::pair<std::string, int> run_validated(const ChatRequest& request, const TagSchema& schema,
                                              const CallContext& context,
                                              const std::function<void(const TagDocument&)>& accept,
                                              const std::vector<ErrorCode>& retry_on,
                                              int max_retries);

    std::shared_ptr<Backend> backend_;
    std::shared_ptr<FailureLog> failures_;
    std::shared_ptr<RateLimiter> limiter_;
    int max_retries_;
    std::atomic<std::size_t> calls_{0};
};

bool is_parse_error(ErrorCode code);

} // namespace screenwright
