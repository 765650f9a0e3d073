#include "screenwright/gateway.hpp"
#include "screenwright/rate_limiter.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <set>

namespace screenwright {

void GenParams::validate() const {
    if (!(temperature >= 0.0 && temperature <= 2.0)) {
        throw Error(ErrorCode::InvalidValue, "temperature must lie in [0, 2]");
    }
    if (!(top_p > 0.0 && top_p <= 1.0)) {
        throw Error(ErrorCode::InvalidValue, "top_p must lie in (0, 1]");
    }
    if (max_tokens && *max_tokens <= 0) {
        throw Error(ErrorCode::InvalidValue, "max_tokens must be positive");
    }
    if (model_id.empty()) {
        throw Error(ErrorCode::InvalidValue, "model_id is empty");
    }
}

std::string_view to_string(Role role) {
    return role == Role::User ? "user" : "assistant";
}

void ChatRequest::validate() const {
    params.validate();
    if (turns.empty()) {
        throw Error(ErrorCode::InvalidValue, "request has no turns");
    }
    for (std::size_t i = 0; i < turns.size(); ++i) {
        const Role expected = i % 2 == 0 ? Role::User : Role::Assistant;
        if (turns[i].role != expected) {
            throw Error(ErrorCode::InvalidValue, "turns must alternate starting with user");
        }
    }
    if (turns.back().role != Role::User) {
        throw Error(ErrorCode::InvalidValue, "request must end with a user turn");
    }
}

const std::string& ChatRequest::last_user() const {
    for (auto it = turns.rbegin(); it != turns.rend(); ++it) {
        if (it->role == Role::User) {
            return it->content;
        }
    }
    throw Error(ErrorCode::InvalidValue, "request has no user turn");
}

std::string canonical_request_json(const ChatRequest& request) {
    // nlohmann::json objects are key-sorted, so dump() is stable.
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& turn : request.turns) {
        turns.push_back({{"role", to_string(turn.role)}, {"content", turn.content}});
    }
    nlohmann::json j = {
        {"model", request.params.model_id},
        {"temperature", request.params.temperature},
        {"top_p", request.params.top_p},
        {"system", request.system},
        {"turns", std::move(turns)},
    };
    return j.dump();
}

std::string request_hash(const ChatRequest& request) {
    const std::string canon = canonical_request_json(request);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(canon.data(), canon.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::Io, "sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

namespace {

constexpr std::array<std::string_view, kStageCount> kStageNames = {
    "Stage1_Planning", "Stage2_Expansion", "Stage3_Screenplay", "Eval", "Synth"};

} // namespace

std::string_view to_string(Stage stage) {
    return kStageNames[static_cast<std::size_t>(stage)];
}

std::optional<Stage> parse_stage(std::string_view text) {
    for (std::size_t i = 0; i < kStageNames.size(); ++i) {
        if (kStageNames[i] == text) {
            return static_cast<Stage>(i);
        }
    }
    return std::nullopt;
}

// FailureLog -----------------------------------------------------------------

void FailureLog::record(FailureRecord record) {
    std::lock_guard lock(mutex_);
    records_.push_back(std::move(record));
}

void FailureLog::record_stage_failure(StageFailureRecord record) {
    std::lock_guard lock(mutex_);
    stage_failures_.push_back(std::move(record));
}

std::vector<FailureRecord> FailureLog::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

std::vector<StageFailureRecord> FailureLog::stage_failures() const {
    std::lock_guard lock(mutex_);
    return stage_failures_;
}

std::size_t FailureLog::attempt_failures(Stage stage) const {
    std::lock_guard lock(mutex_);
    return static_cast<std::size_t>(std::count_if(
        records_.begin(), records_.end(), [&](const auto& r) { return r.stage == stage; }));
}

std::size_t FailureLog::failed_stories(Stage stage) const {
    std::lock_guard lock(mutex_);
    std::set<std::string> ids;
    for (const auto& f : stage_failures_) {
        if (f.stage == stage) {
            ids.insert(f.story_id);
        }
    }
    return ids.size();
}

void FailureLog::clear() {
    std::lock_guard lock(mutex_);
    records_.clear();
    stage_failures_.clear();
}

// Gateway --------------------------------------------------------------------

bool is_parse_error(ErrorCode code) {
    return code == ErrorCode::MissingTag || code == ErrorCode::UnbalancedTag ||
           code == ErrorCode::ArityViolation;
}

Gateway::Gateway(std::shared_ptr<Backend> backend, std::shared_ptr<FailureLog> failures,
                 std::shared_ptr<RateLimiter> limiter, int max_retries)
    : backend_(std::move(backend)),
      failures_(failures ? std::move(failures) : std::make_shared<FailureLog>()),
      limiter_(std::move(limiter)),
      max_retries_(max_retries) {
    if (!backend_) {
        throw Error(ErrorCode::ConfigError, "gateway needs a backend");
    }
    if (max_retries_ < 0) {
        throw Error(ErrorCode::ConfigError, "max_retries must be >= 0");
    }
}

std::string Gateway::complete(const ChatRequest& request) {
    request.validate();
    if (limiter_) {
        limiter_->acquire();
    }
    ++calls_;
    return backend_->complete(request);
}

TagDocument Gateway::complete_structured(const ChatRequest& request, const TagSchema& schema,
                                         int max_retries, const CallContext& context) {
    TagDocument out;
    run_validated(request, schema, context, [&](const TagDocument& doc) { out = doc; }, {},
                  max_retries);
    return out;
}

TagDocument Gateway::complete_structured(const ChatRequest& request, const TagSchema& schema,
                                         const CallContext& context) {
    return complete_structured(request, schema, max_retries_, context);
}

std::pair<std::string, int> Gateway::run_validated(
    const ChatRequest& request, const TagSchema& schema, const CallContext& context,
    const std::function<void(const TagDocument&)>& accept, const std::vector<ErrorCode>& retry_on,
    int max_retries) {
    if (max_retries < 0) {
        throw Error(ErrorCode::InvalidValue, "max_retries must be >= 0");
    }
    ErrorCode last = ErrorCode::MissingTag;
    std::string last_message;
    const int attempts = max_retries + 1;
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        std::string raw = complete(request);
        try {
            accept(parse_tag_document(raw, schema));
            return {std::move(raw), attempt};
        } catch (const Error& e) {
            failures_->record({context.stage, attempt, std::string(to_string(e.code())),
                               context.story_id});
            const bool retryable = is_parse_error(e.code()) ||
                                   std::find(retry_on.begin(), retry_on.end(), e.code()) !=
                                       retry_on.end();
            if (!retryable) {
                throw;
            }
            last = e.code();
            last_message = e.what();
        }
    }
    throw Error(ErrorCode::StructuredOutputFailure,
                std::string(to_string(context.stage)) + ": no valid output after " +
                    std::to_string(attempts) + " attempts (" + last_message + ")")
        .with_cause(last);
}

} // namespace screenwright
