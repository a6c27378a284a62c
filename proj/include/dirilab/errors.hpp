#pragma once

#include <stdexcept>
#include <string>

namespace dirilab {

enum class ErrorKind {
    InvalidInput,
    MissingPrimeAngle,
    DegenerateDenominator,
    PoleHit,
    QuadratureNonconvergence,
    TooManyPrimes,
    ZeroOnLine,
    SingularPoint,
    BoundaryZeroSuspected,
    HypothesisFailed,
    TruncationOverflow,
    InsufficientCover,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace dirilab
