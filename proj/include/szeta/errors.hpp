#pragma once

#include <stdexcept>
#include <string>

namespace szeta {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |tr| is within tolerance of 2; classification needs more precision.
struct IndeterminateClass : Error {
    using Error::Error;
};

/// Operation requires a hyperbolic element.
struct NotHyperbolic : Error {
    using Error::Error;
};

/// Two distinct words collide within tolerance even at escalated precision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// Ball-completeness certificate failed for the requested L_max.
struct IncompleteBall : Error {
    using Error::Error;
};

/// Primitivity cannot be certified at the given search radius.
struct InconclusivePrimitivity : Error {
    using Error::Error;
};

/// Truncation tail bound of a local-factor product exceeds the cap.
struct DivergentTail : Error {
    using Error::Error;
};

/// Evaluation point lies outside the zeta convergence half-plane.
struct OutsideConvergence : Error {
    using Error::Error;
};

/// Evaluation point coincides with a pole of the requested function.
struct PoleHit : Error {
    using Error::Error;
};

/// Calibration needs at least two sample points.
struct InsufficientSamples : Error {
    using Error::Error;
};

/// lambda = 0 is excluded from the cohomology tables.
struct UnsupportedLambda : Error {
    using Error::Error;
};

/// mu(lambda) falls beyond the completeness cutoff of the supplied spectrum.
struct UnknownSpectralRegion : Error {
    using Error::Error;
};

}  // namespace szeta
