#pragma once

#include "fracperiod/errors.hpp"

namespace fracperiod {

/// Gamma function, Lanczos approximation with reflection for x < 0.5.
/// Accurate to >= 13 significant digits away from the poles.
/// Throws PoleAtNonPositiveInteger at x = 0, -1, -2, ...
double gamma(double x);

/// Rising factorial (A)_j = A (A+1) ... (A+j-1); (A)_0 = 1.
double pochhammer(double a, int j);

struct Hyp1F2Params {
    double a = 1.0;
    double b1 = 1.0;
    double b2 = 1.0;
    double z = 0.0;
};

/// Generalized hypergeometric 1F2(a; b1, b2; z) by direct series summation
/// (long double accumulator). b1, b2 must not be nonpositive integers.
/// Throws SeriesIllConditioned for |z| > 400, where cancellation swamps the
/// series; callers switch to an asymptotic or integral representation there.
double hyp1f2(const Hyp1F2Params& p);

/// Fractional integral of sin of order alpha in (0,2), closed form.
/// Small t: t^{alpha+1}/Gamma(alpha+2) * 1F2(1; alpha/2+1, (alpha+3)/2; -t^2/4).
/// Large t: sin(t - alpha*pi/2) - Im[e^{i(t-alpha*pi/2)} Gamma(alpha, it)]/Gamma(alpha),
/// with the upper incomplete gamma by Lentz continued fraction. The two
/// branches agree to ~1e-12 at the seam.
double frac_integral_sin_closed(double alpha, double t);

/// Two-term large-t expansions, alpha = 0.5 or 1.5 only (UnsupportedOrder
/// otherwise; requires t >= 20):
///   0.5: 1/sqrt(pi t) + (sin t - cos t)/sqrt(2)
///   1.5: 2 sqrt(t)/sqrt(pi) - (sin t + cos t)/sqrt(2)
double frac_integral_sin_asymptotic(double alpha, double t);

/// Hurwitz zeta zeta(s, q) for q > 0 and any real s != 1, by Euler-Maclaurin
/// with 10 boundary terms (analytic continuation for s < 1).
double hurwitz_zeta(double s, double q);

/// Weyl convolution kernel for 2*pi-periodic signals, order alpha in (0,1),
/// s in (0, 2*pi]. Production path is the closed form
///   g(s) = (2*pi)^alpha * zeta(1-alpha, s/(2*pi)) / Gamma(alpha),
/// equal to the defining regularized limit via the zeta recurrence.
double weyl_kernel_g(double s, double alpha);

/// The defining limit of g truncated at n terms:
///   2*pi/Gamma(alpha) s^{alpha-1}
///   + [2*pi sum_{m=1}^{n} (s+2*pi*m)^{alpha-1} - (2*pi*n)^alpha/alpha]/Gamma(alpha).
/// Converges like n^{alpha-1}; kept as a cross-check oracle for the closed form.
double weyl_kernel_g_truncated(double s, double alpha, long n);

} // namespace fracperiod
