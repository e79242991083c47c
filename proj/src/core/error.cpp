#include "shannon/error.hpp"

namespace shannon {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::SequenceExhausted: return "SequenceExhausted";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::InvalidNormalizer: return "InvalidNormalizer";
    case ErrorCode::NonArchimedeanSequence: return "NonArchimedeanSequence";
    case ErrorCode::ArchimedeanSequence: return "ArchimedeanSequence";
    case ErrorCode::BadUniformizer: return "BadUniformizer";
    case ErrorCode::UndecidedEquality: return "UndecidedEquality";
    case ErrorCode::SigmaOutOfRange: return "SigmaOutOfRange";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Precondition: return "PreconditionFailed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ExpressionSwell: return "ExpressionSwell";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::Internal: return "InternalError";
    }
    return "UnknownError";
}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace shannon
