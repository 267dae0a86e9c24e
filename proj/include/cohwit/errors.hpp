#ifndef COHWIT_ERRORS_HPP
#define COHWIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cohwit {

enum class ErrorKind {
    InvalidArgument,
    NotHermitian,
    NotADensityMatrix,
    NonConvergence,
    DimensionMismatch,
    NotAWitness,
    NotNontrivial,
    NotCoherent,
    UnsupportedClass,
    ClassMismatch,
    TooManyWitnesses,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotADensityMatrix: return "NotADensityMatrix";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAWitness: return "NotAWitness";
    case ErrorKind::NotNontrivial: return "NotNontrivial";
    case ErrorKind::NotCoherent: return "NotCoherent";
    case ErrorKind::UnsupportedClass: return "UnsupportedClass";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::TooManyWitnesses: return "TooManyWitnesses";
    }
    return "Unknown";
}

/// Domain error raised by every library operation. The kind is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cohwit

#endif // COHWIT_ERRORS_HPP
