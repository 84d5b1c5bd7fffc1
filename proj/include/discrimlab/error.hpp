#ifndef DISCRIMLAB_ERROR_HPP
#define DISCRIMLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace discrimlab {

enum class ErrorKind {
    NotPositiveDefinite,
    NonConvergence,
    DimensionMismatch,
    ParseError,
    MissingColumn,
    EmptyGroup,
    DegenerateGroup,
    IndexOutOfRange,
    DivisionByZero,
    SingularCovariance,
    SingularWithin,
    TooFewRows,
    DomainError,
    DegenerateConstraint,
    ZeroVector,
    DegenerateVariable,
    LengthMismatch,
    DegenerateBinning,
    NonPositiveMeasurement,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every user/data error raised by the library. The kind is stable and tested;
// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace discrimlab

#endif  // DISCRIMLAB_ERROR_HPP
