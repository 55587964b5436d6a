#pragma once

#include <stdexcept>
#include <string>

namespace heunc {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// beta at (or within tolerance of) a negative integer: the recurrence
// coefficient A_n = 1 + beta/n vanishes for n = -beta.
struct InvalidBeta : Error {
    explicit InvalidBeta(const std::string& what) : Error(what) {}
};

// |z| beyond the radius the series evaluator accepts.
struct OutOfDisk : Error {
    explicit OutOfDisk(const std::string& what) : Error(what) {}
};

// An iteration hit its cap before meeting its convergence test.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

// A series did not carry enough trusted coefficients for the operation.
struct DegreeTooLow : Error {
    explicit DegreeTooLow(const std::string& what) : Error(what) {}
};

// The polynomial machinery requires alpha != 0.
struct AlphaZero : Error {
    explicit AlphaZero(const std::string& what) : Error(what) {}
};

// A constructed object failed its own consistency check.
struct VerificationFailed : Error {
    explicit VerificationFailed(const std::string& what) : Error(what) {}
};

// Parameters do not satisfy the delta_N condition the operation assumes.
struct DeltaConditionViolated : Error {
    explicit DeltaConditionViolated(const std::string& what) : Error(what) {}
};

}  // namespace heunc
