#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stereobox {

/// Base class for all stereobox errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The mean corner offset of a pair is zero or negative. Signals a matching
/// failure or an object behind the rectification plane.
struct NonPositiveDisparity : Error {
    using Error::Error;
};

/// Fewer samples than the fit (or the fold layout) requires.
struct InsufficientData : Error {
    using Error::Error;
};

/// Rank-deficient least-squares system with no ridge term. Signals
/// degenerate or duplicate inputs.
struct SingularSystem : Error {
    using Error::Error;
};

/// Prediction and truth vectors differ in length.
struct LengthMismatch : Error {
    using Error::Error;
};

/// A metric was requested over zero samples.
struct EmptyInput : Error {
    using Error::Error;
};

/// A non-positive depth or extent reached obstacle construction.
struct InvalidEstimate : Error {
    using Error::Error;
};

/// Point-cloud sampling resolution below the minimum (3 angular, 2 vertical).
struct InvalidResolution : Error {
    using Error::Error;
};

/// A synthetic object projects outside the image bounds of one of the
/// cameras.
struct OutOfFrame : Error {
    using Error::Error;
};

/// Malformed text input. Carries the 1-based line number the parser stopped
/// at; the message already names it.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace stereobox
