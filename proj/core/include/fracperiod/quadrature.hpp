#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "fracperiod/errors.hpp"
#include "fracperiod/signal.hpp"

namespace fracperiod {

/// Mesh and accuracy policy for the weakly singular integrals.
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Base panel count per period of the integrand (>= 8).
    int panels_per_period = 64;
    /// Mesh grading exponent toward the singular endpoint. Unset means
    /// 1/alpha clamped to [1, 10].
    std::optional<double> grading_exponent;
    /// Mesh doublings allowed before giving up with ToleranceNotMet.
    int max_refine_levels = 5;

    void validate() const;
};

/// Validated fractional order. Each named constructor enforces the range the
/// corresponding operator admits.
class FracOrder {
public:
    static FracOrder integral(double alpha);   // (0, 2)
    static FracOrder derivative(double alpha); // (0, 1)
    static FracOrder weyl(double alpha);       // (0, 1)

    double value() const { return alpha_; }

private:
    explicit FracOrder(double alpha) : alpha_(alpha) {}
    double alpha_;
};

/// (1/Gamma(alpha)) * integral over [0,t] of (t-s)^{alpha-1} f(s) ds by
/// product integration: panels graded toward the singular endpoint s = t,
/// cubic interpolation of f per panel, exact closed-form kernel moments.
/// Error controlled by two-level mesh comparison; throws ToleranceNotMet
/// if the estimate stays above tolerance at maximum refinement, and
/// NonPositiveTime for t <= 0.
double singular_integral(const FourierSignal& f, FracOrder alpha, double t,
                         const QuadratureConfig& cfg = {});

/// Same integral for an arbitrary integrand phi given pointwise.
/// smoothness_scale sets the base panel width (panels no wider than
/// smoothness_scale / panels_per_period); use the period for periodic phi.
double singular_integral_of(const std::function<double(double)>& phi,
                            double smoothness_scale, FracOrder alpha, double t,
                            const QuadratureConfig& cfg = {});

/// Independent verification route: substitution u = (t-s)^alpha removes the
/// singularity and the result is (1/Gamma(alpha+1)) * integral of
/// f(t - u^{1/alpha}) du over [0, t^alpha], by adaptive Gauss-Kronrod.
double oracle_singular_integral(const FourierSignal& f, FracOrder alpha, double t,
                                const QuadratureConfig& cfg = {});

/// Integral over [-nT, 0] of (t-s)^{alpha-1} f(s) ds (without 1/Gamma(alpha));
/// the kernel is smooth there since t - s >= t > 0. Computed per period block.
double tail_integral(const FourierSignal& f, FracOrder alpha, double t, long n,
                     const QuadratureConfig& cfg = {});

/// One period block: integral over [0, T] of (X - r)^{alpha-1} f(r) dr for
/// X > T, graded toward r = T when X - T is small against T.
double period_block_integral(const FourierSignal& f, double alpha, double x_shift,
                             const QuadratureConfig& cfg = {});

struct TruncationDepth {
    std::uint64_t n = 1;
    /// Set when the exact depth exceeds the practical cap (10^15 blocks);
    /// n then holds the cap instead of overflowing.
    bool impractical = false;
};

/// Smallest n with t (nT)^{alpha-1} f_sup <= eps: the number of whole periods
/// after which the discarded history segment is below eps.
TruncationDepth truncation_depth(FracOrder alpha, double period, double t, double eps,
                                 double f_sup);

/// Adaptive Gauss-Kronrod 7/15 on [lo, hi]. Used by the oracle route and by
/// the Weyl kernel quadrature; throws ToleranceNotMet when the interval
/// budget is exhausted.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double lo,
                              double hi, double rel_tol, double abs_tol,
                              int max_intervals = 5000);

} // namespace fracperiod
