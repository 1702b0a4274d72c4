#pragma once

#include <stdexcept>
#include <string>

namespace zetapulse {

// Argument outside the mathematical domain of an operation (bad time range,
// unnormalized state, |zeta_dot| >= envelope, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// zeta too close to a pole of cot(2*zeta)/csc(2*zeta); carries the offending time.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Envelope invalid: non-positive where positivity is required, or a sign
// change where the synthesis needs a fixed sign.
struct EnvelopeError : std::runtime_error {
    explicit EnvelopeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Root bracket does not straddle a sign change.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

// A gate calibration could not reach its target.
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An input violated a contract the caller promised (non-Hermitian sample,
// non-unitary matrix where a unitary is required).
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zetapulse
