#pragma once

#include <stdexcept>
#include <string>

namespace fracperiod {

/// Base class for all library-specific failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Signal file / coefficient list does not describe a valid real signal.
struct InvalidSignalSpec : Error {
    using Error::Error;
};

/// Fractional order outside the operator's admissible range.
struct InvalidOrder : Error {
    using Error::Error;
};

/// Operation requires a mean-zero signal.
struct NonZeroMean : Error {
    using Error::Error;
};

/// Operation requires a signal with nonzero mean.
struct ZeroMean : Error {
    using Error::Error;
};

/// Evaluation time must be strictly positive.
struct NonPositiveTime : Error {
    using Error::Error;
};

/// Internal error estimate still above tolerance at maximum mesh refinement.
struct ToleranceNotMet : Error {
    using Error::Error;
};

/// Requested truncation depth exceeds any practical block count.
struct DepthImpractical : Error {
    using Error::Error;
};

/// Riemann-Liouville derivative evaluated too close to t = 0.
struct SingularAtZero : Error {
    using Error::Error;
};

/// Gamma function evaluated at a nonpositive integer.
struct PoleAtNonPositiveInteger : Error {
    using Error::Error;
};

/// Hypergeometric series argument outside the well-conditioned range.
struct SeriesIllConditioned : Error {
    using Error::Error;
};

/// Asymptotic form requested for an order it does not cover.
struct UnsupportedOrder : Error {
    using Error::Error;
};

/// Non-periodicity search failed to produce a defect above threshold.
struct CertificateNotFound : Error {
    using Error::Error;
};

} // namespace fracperiod
