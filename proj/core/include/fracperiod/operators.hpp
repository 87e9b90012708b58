#pragma once

#include <string>

#include "fracperiod/quadrature.hpp"
#include "fracperiod/signal.hpp"

namespace fracperiod {

enum class OperatorKind { RLIntegral, CaputoDerivative, RLDerivative, WeylIntegral };

/// Admissible order range of each operator: integral (0,2), derivatives (0,1),
/// Weyl (0,1).
bool alpha_admissible(OperatorKind kind, double alpha);
std::string operator_name(OperatorKind kind);

/// Riemann-Liouville integral I^alpha f(t) for alpha in (0,2), t > 0.
/// Orders in (1,2) use the semigroup split I^alpha = I^{alpha-1} I^1 with the
/// exact Fourier antiderivative, keeping the singular quadrature in (0,1].
double rl_integral(const FourierSignal& f, FracOrder alpha, double t,
                   const QuadratureConfig& cfg = {});

/// Caputo derivative of order alpha in (0,1): I^{1-alpha} applied to f'.
double caputo_derivative(const FourierSignal& f, FracOrder alpha, double t,
                         const QuadratureConfig& cfg = {});

/// Riemann-Liouville derivative of order alpha in (0,1):
/// Caputo + f(0) t^{-alpha} / Gamma(1-alpha). Throws SingularAtZero for
/// t below 1e-12.
double rl_derivative(const FourierSignal& f, FracOrder alpha, double t,
                     const QuadratureConfig& cfg = {});

/// The T-periodic Weyl integral of f as a Fourier signal: coefficients
/// c_k (i k w)^{-alpha}, principal branch. Requires mean(f) = 0.
FourierSignal weyl_periodic_signal(const FourierSignal& f, FracOrder alpha);

/// Weyl integral by the Fourier multiplier route; exact up to rounding.
double weyl_integral_fourier(const FourierSignal& f, FracOrder alpha, double t);

/// How weyl_integral_limit resolves the infinite history.
enum class TailMode {
    /// Finitely many period blocks plus the analytic remainder of the block
    /// series (binomial moments against convergent Hurwitz-zeta sums).
    accelerated,
    /// Plain truncation after n blocks with n chosen from the mean-zero
    /// discard bound c (t+nT)^{alpha-1} <= eps; n above 10^6 blocks throws
    /// DepthImpractical.
    direct_truncation,
};

/// Weyl integral as the conventionally convergent limit of
/// (1/Gamma(alpha)) * integral over [t-nT, t]: singular part on [0, t] plus
/// the history tail. Total error at most eps. Requires mean(f) = 0.
double weyl_integral_limit(const FourierSignal& f, FracOrder alpha, double t, double eps,
                           const QuadratureConfig& cfg = {},
                           TailMode mode = TailMode::accelerated);

/// Weyl integral by convolution with the kernel g over one period:
/// (1/2pi) * integral of f(t-s) g(s) ds after rescaling f to period 2*pi;
/// the result is dilated back by (T/2pi)^alpha. Requires mean(f) = 0.
double weyl_integral_kernel(const FourierSignal& f, FracOrder alpha, double t,
                            const QuadratureConfig& cfg = {});

} // namespace fracperiod
