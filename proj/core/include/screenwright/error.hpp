#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace screenwright {

enum class ErrorCode {
    // tag codec
    MissingTag,
    UnbalancedTag,
    ArityViolation,
    // domain validation
    InvalidValue,
    CardinalityOutOfRange,
    DuplicateName,
    InvalidLabel,
    LabelGap,
    OrphanSubplot,
    EmptyTopPlot,
    TooManySubplots,
    UnknownCharacterName,
    ComponentCount,
    ConstraintViolation,
    // gateway
    TransportError,
    RateLimited,
    ReplayMiss,
    StructuredOutputFailure,
    // stages
    RoleMismatch,
    ForeignCharacter,
    MissingSceneHeading,
    UnknownLabel,
    OutOfOrderExpansion,
    MissingEpisode,
    DuplicateEpisode,
    CoverageGap,
    MalformedVerdict,
    EmptyResults,
    StageFailure,
    StageOrder,
    ConfigError,
    Io,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `code()` identifies the failure;
// parse errors also carry the byte range of the offending input.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorCode code, const std::string& message,
          std::size_t begin = npos, std::size_t end = npos);

    ErrorCode code() const noexcept { return code_; }
    std::size_t begin_offset() const noexcept { return begin_; }
    std::size_t end_offset() const noexcept { return end_; }

    // For StructuredOutputFailure / StageFailure: the error that caused the last failed attempt.
    ErrorCode cause() const noexcept { return cause_; }
    Error& with_cause(ErrorCode cause) {
        cause_ = cause;
        return *this;
    }

private:
    ErrorCode code_;
    ErrorCode cause_;
    std::size_t begin_;
    std::size_t end_;
};

} // namespace screenwright
