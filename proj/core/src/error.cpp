#include "screenwright/error.hpp"

namespace screenwright {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MissingTag: return "MissingTag";
    case ErrorCode::UnbalancedTag: return "UnbalancedTag";
    case ErrorCode::ArityViolation: return "ArityViolation";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::CardinalityOutOfRange: return "CardinalityOutOfRange";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::LabelGap: return "LabelGap";
    case ErrorCode::OrphanSubplot: return "OrphanSubplot";
    case ErrorCode::EmptyTopPlot: return "EmptyTopPlot";
    case ErrorCode::TooManySubplots: return "TooManySubplots";
    case ErrorCode::UnknownCharacterName: return "UnknownCharacterName";
    case ErrorCode::ComponentCount: return "ComponentCount";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::ReplayMiss: return "ReplayMiss";
    case ErrorCode::StructuredOutputFailure: return "StructuredOutputFailure";
    case ErrorCode::RoleMismatch: return "RoleMismatch";
    case ErrorCode::ForeignCharacter: return "ForeignCharacter";
    case ErrorCode::MissingSceneHeading: return "MissingSceneHeading";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::OutOfOrderExpansion: return "OutOfOrderExpansion";
    case ErrorCode::MissingEpisode: return "MissingEpisode";
    case ErrorCode::DuplicateEpisode: return "DuplicateEpisode";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::MalformedVerdict: return "MalformedVerdict";
    case ErrorCode::EmptyResults: return "EmptyResults";
    case ErrorCode::StageFailure: return "StageFailure";
    case ErrorCode::StageOrder: return "StageOrder";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t begin, std::size_t end)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      cause_(code),
      begin_(begin),
      end_(end) {}

} // namespace screenwright
