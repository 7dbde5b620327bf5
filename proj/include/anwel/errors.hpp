#pragma once

#include <stdexcept>
#include <string>

namespace anwel {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root finding / iteration did not reach the requested tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Discriminant/resultant asked of a polynomial of degree < 2.
struct DegreeTooSmall : Error {
    using Error::Error;
};

// Operands with incompatible degrees or lengths.
struct DegreeMismatch : Error {
    using Error::Error;
};

// Invalid (n, i) or (k) arguments for a stratum.
struct BadIndices : Error {
    using Error::Error;
};

// Newton hit a numerically singular Jacobian.
struct SingularJacobian : Error {
    using Error::Error;
};

// A continuation path could not be tracked to the end.
struct PathFailure : Error {
    using Error::Error;
};

// Two tracked paths ended at the same point unexpectedly.
struct PathCollision : Error {
    using Error::Error;
};

// A member curve too degenerate to classify (sign undefined).
struct DegenerateMember : Error {
    using Error::Error;
};

// A sampled slice kept producing degenerate members after resampling.
struct NonGenericSlice : Error {
    using Error::Error;
};

// Matrix numerically singular beyond recovery.
struct TooIllConditioned : Error {
    using Error::Error;
};

}  // namespace anwel
