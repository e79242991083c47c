#pragma once

#include <stdexcept>
#include <string>

namespace shannon {

enum class ErrorCode {
    Parse,
    DimensionMismatch,
    NotDivisible,
    ZeroElement,
    SequenceExhausted,
    NotStabilized,
    InvalidNormalizer,
    NonArchimedeanSequence,
    ArchimedeanSequence,
    BadUniformizer,
    UndecidedEquality,
    SigmaOutOfRange,
    UnknownFamily,
    Config,
    Precondition,
    Overflow,
    ExpressionSwell,
    DomainMismatch,
    Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every engine failure is reported through this type; `code()` is stable
/// and is what the C API maps onto its status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

} // namespace shannon
