#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class ErrorCode {
    NotConvex,
    NotDelzant,
    NotCounterclockwise,
    ExceedsBoundingSquare,
    UnknownPreset,
    SingularSystem,
    OnBoundary,
    DegenerateLattice,
    NoCoveringChart,
    NonFiniteResult,
    GroupDoesNotPreserveLattice,
    EmptyGrid,
    NonPositiveIntegral,
    InvalidCorrection,
    Diverged,
    StepRejected,
    StepTooLarge,
    NewtonFailed,
    ConfigError,
    IoError,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::NotDelzant: return "NotDelzant";
        case ErrorCode::NotCounterclockwise: return "NotCounterclockwise";
        case ErrorCode::ExceedsBoundingSquare: return "ExceedsBoundingSquare";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::OnBoundary: return "OnBoundary";
        case ErrorCode::DegenerateLattice: return "DegenerateLattice";
        case ErrorCode::NoCoveringChart: return "NoCoveringChart";
        case ErrorCode::NonFiniteResult: return "NonFiniteResult";
        case ErrorCode::GroupDoesNotPreserveLattice: return "GroupDoesNotPreserveLattice";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::NonPositiveIntegral: return "NonPositiveIntegral";
        case ErrorCode::InvalidCorrection: return "InvalidCorrection";
        case ErrorCode::Diverged: return "Diverged";
        case ErrorCode::StepRejected: return "StepRejected";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::NewtonFailed: return "NewtonFailed";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace toric
