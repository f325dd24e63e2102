#include "multicast/error.hpp"

namespace multicast {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::DuplicateDimName: return "DuplicateDimName";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::EmptyColumn: return "EmptyColumn";
        case ErrorCode::OutOfRangeInt: return "OutOfRangeInt";
        case ErrorCode::DigitOverflow: return "DigitOverflow";
        case ErrorCode::NoCompleteTimestamp: return "NoCompleteTimestamp";
        case ErrorCode::AlphabetTooSmall: return "AlphabetTooSmall";
        case ErrorCode::DigitalAlphabetOverflow: return "DigitalAlphabetOverflow";
        case ErrorCode::BackendUnreachable: return "BackendUnreachable";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::ConstraintUnsupported: return "ConstraintUnsupported";
        case ErrorCode::HttpStatus: return "HttpStatus";
        case ErrorCode::MalformedResponse: return "MalformedResponse";
        case ErrorCode::AllSamplesInvalid: return "AllSamplesInvalid";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyHistory: return "EmptyHistory";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::Io: return "Io";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RaggedRows: return "RaggedRows";
        case ErrorCode::BadSplit: return "BadSplit";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
    }
    return "Unknown";
}

}  // namespace multicast
