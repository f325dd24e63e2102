#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace multicast {

/// Every failure the library reports carries one of these codes.
enum class ErrorCode {
    // series / config
    EmptySeries,
    NonFinite,
    DuplicateDimName,
    ShapeMismatch,
    InvalidConfig,
    // scaling
    EmptyColumn,
    OutOfRangeInt,
    // multiplex
    DigitOverflow,
    NoCompleteTimestamp,
    // sax
    AlphabetTooSmall,
    DigitalAlphabetOverflow,
    // backend
    BackendUnreachable,
    Timeout,
    ConstraintUnsupported,
    HttpStatus,
    MalformedResponse,
    // pipeline
    AllSamplesInvalid,
    EmptyInput,
    // baselines
    EmptyHistory,
    TooShort,
    SingularDesign,
    // eval
    Io,
    ParseError,
    RaggedRows,
    BadSplit,
    LengthMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace multicast
