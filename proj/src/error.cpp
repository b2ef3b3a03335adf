#include "tonalscape/error.hpp"

namespace tonalscape {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingHeader: return "MissingHeader";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::TruncatedChunk: return "TruncatedChunk";
        case ErrorCode::BadVarLen: return "BadVarLen";
        case ErrorCode::MalformedEvent: return "MalformedEvent";
        case ErrorCode::ZeroLengthSegment: return "ZeroLengthSegment";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::ZeroWeightWindow: return "ZeroWeightWindow";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::WindowTooLong: return "WindowTooLong";
        case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
        case ErrorCode::MismatchedCoefficient: return "MismatchedCoefficient";
        case ErrorCode::NoNotes: return "NoNotes";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::BadBundle: return "BadBundle";
    }
    return "Unknown";
}

}  // namespace tonalscape
