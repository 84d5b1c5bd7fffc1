#include "discrimlab/error.hpp"

namespace discrimlab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::EmptyGroup: return "EmptyGroup";
        case ErrorKind::DegenerateGroup: return "DegenerateGroup";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::SingularCovariance: return "SingularCovariance";
        case ErrorKind::SingularWithin: return "SingularWithin";
        case ErrorKind::TooFewRows: return "TooFewRows";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateConstraint: return "DegenerateConstraint";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DegenerateVariable: return "DegenerateVariable";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::DegenerateBinning: return "DegenerateBinning";
        case ErrorKind::NonPositiveMeasurement: return "NonPositiveMeasurement";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace discrimlab
