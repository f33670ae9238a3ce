#pragma once

#include <stdexcept>
#include <string>

namespace qball {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config file could not be parsed or fails validation.
struct ConfigError : Error { using Error::Error; };

// |C| fell below the zero-charge threshold; the hylenic ratio is undefined.
struct ZeroChargeError : Error { using Error::Error; };

// The minimization iterate entered the vanishing regime (delta outside the
// admissible range, or a bad initial profile).
struct CollapseError : Error { using Error::Error; };

// Iteration budget exhausted before the stopping tolerance was met.
struct NoConvergenceError : Error { using Error::Error; };

// No radius on the scan ladder produced a positive hylomorphy margin.
struct CertificateFailedError : Error { using Error::Error; };

// Shooting bracket failed: no monotone-decay ground state at this frequency.
struct NoGroundStateError : Error { using Error::Error; };

// Too few nodes above the amplitude floor to extract the multiplier.
struct DegenerateFitError : Error { using Error::Error; };

// Non-finite values detected during a run.
struct NumericAbortError : Error { using Error::Error; };

} // namespace qball
