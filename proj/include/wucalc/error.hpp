#pragma once

#include <stdexcept>
#include <string>

namespace wucalc {

enum class ErrorKind {
    UnknownGenerator,
    PresentationMismatch,
    NotAUnit,
    NoAction,
    NonHomogeneous,
    SingularPairing,
    InvalidChern,
    MissingGysin,
    NotDivisible,
    RangeViolation,
    BadParity,
    DegreeOverflow,
    Consistency,
    ParseError,
    ValidationError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::PresentationMismatch: return "PresentationMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NoAction: return "NoAction";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::SingularPairing: return "SingularPairing";
    case ErrorKind::InvalidChern: return "InvalidChern";
    case ErrorKind::MissingGysin: return "MissingGysin";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::BadParity: return "BadParity";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::Consistency: return "Consistency";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Error";
}

/// All library failures throw this. `kind` drives the CLI exit code:
/// ParseError/ValidationError/UnknownGenerator/InvalidChern are input
/// problems (exit 2), the rest are domain errors (exit 1).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
          kind_(kind),
          message_(msg) {}

    ErrorKind kind() const { return kind_; }

    /// The message without the kind prefix, for callers that re-wrap it.
    const std::string& message() const { return message_; }

    bool input_error() const {
        return kind_ == ErrorKind::ParseError || kind_ == ErrorKind::ValidationError ||
               kind_ == ErrorKind::UnknownGenerator || kind_ == ErrorKind::InvalidChern;
    }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace wucalc
