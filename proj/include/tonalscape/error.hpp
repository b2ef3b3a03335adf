#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tonalscape {

enum class ErrorCode {
    // midi
    MissingHeader,
    UnsupportedFormat,
    TruncatedChunk,
    BadVarLen,
    MalformedEvent,
    // segmentation
    ZeroLengthSegment,
    // pitch-class math
    ZeroVector,
    BadIndex,
    ParseError,
    NegativeWeight,
    // wavescape / trajectory
    EmptyInput,
    ZeroWeightWindow,
    OutOfRange,
    WindowTooLong,
    EmptyTrajectory,
    // render
    MismatchedCoefficient,
    // analysis
    NoNotes,
    BadConfig,
    BadBundle,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by the pitch-class text grammar; `position` is the 0-based offset
/// of the offending character.
class ParseError : public Error {
  public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorCode::ParseError, message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace tonalscape
