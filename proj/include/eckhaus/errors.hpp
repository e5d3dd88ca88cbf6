// Error types shared across the library. Each maps to one failure mode of a
// specific operation; all derive from Error so callers can catch broadly.
#pragma once

#include <stdexcept>
#include <string>

namespace eckhaus {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Hermitian-symmetry check failed on a spectral field that claims to
// represent a real function. Signals a bug upstream, not bad user input.
struct SymmetryViolation : Error {
    using Error::Error;
};

// |q| >= 1: equilibrium amplitude sqrt(1-q^2) undefined.
struct InvalidWavenumber : Error {
    using Error::Error;
};

struct NormalizationFailure : Error {
    using Error::Error;
};

struct DeltaTooLarge : Error {
    using Error::Error;
};

// Blow-up or misconfiguration: a state value became NaN/Inf. Carries the
// last valid time so unstable runs can be post-mortemed.
struct NonFinite : Error {
    explicit NonFinite(const std::string& msg, double t = -1.0)
        : Error(msg), time(t) {}
    double time;
};

struct InsufficientHistory : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct MassNotZero : Error {
    using Error::Error;
};

struct DegenerateCoefficients : Error {
    using Error::Error;
};

struct FitUnstable : Error {
    using Error::Error;
};

struct NonPositiveValue : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

struct OrderInconsistency : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace eckhaus
