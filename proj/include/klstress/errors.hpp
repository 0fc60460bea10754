#pragma once

#include <stdexcept>
#include <string>

namespace klstress {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied data or parameters (files, flags, malformed sequences).
struct InvalidInput : Error {
    using Error::Error;
};

// e^{-1/lambda} underflowed to exactly 0 while 0 < F(a) < 1; the caller
// should switch to the depletion limit instead of tilting.
struct DepletionUnderflow : Error {
    using Error::Error;
};

// F(a) is 0 or 1, so tilting at a has no effect and no multiplier exists.
struct FlatThreshold : Error {
    using Error::Error;
};

struct NonPositiveEps : InvalidInput {
    using InvalidInput::InvalidInput;
};

// max_a phi_lambda(a) never exceeds 1/2, even in the lambda -> 0 limit.
struct NoBoundary : Error {
    using Error::Error;
};

// The requested stress level exceeds the depletion cap max_a F(a).
struct TargetUnreachable : Error {
    using Error::Error;
};

// A tilted measure was paired with a base over different atoms.
struct MismatchedSupport : Error {
    using Error::Error;
};

// Oracle input exceeds the brute-force scale limits.
struct SupportTooLarge : Error {
    using Error::Error;
};

// kl_direct called with Q putting mass outside the support of P.
struct NotAbsolutelyContinuous : Error {
    using Error::Error;
};

}  // namespace klstress
