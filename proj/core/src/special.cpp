#include "fracperiod/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace fracperiod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos g = 7, 9 coefficients.
double lanczos_positive(double x) {
    static const double c[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};
    const double z = x - 1.0;
    double acc = c[0];
    for (int i = 1; i < 9; ++i) acc += c[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleAtNonPositiveInteger("gamma pole at x = " + std::to_string(x));
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * lanczos_positive(1.0 - x));
    return lanczos_positive(x);
}

double pochhammer(double a, int j) {
    double acc = 1.0;
    for (int i = 0; i < j; ++i) acc *= a + i;
    return acc;
}

double hyp1f2(const Hyp1F2Params& p) {
    if (is_nonpositive_integer(p.b1) || is_nonpositive_integer(p.b2))
        throw std::invalid_argument("hyp1f2: b parameters must not be nonpositive integers");
    if (std::abs(p.z) > 400.0)
        throw SeriesIllConditioned("hyp1f2: |z| > 400, series cancellation too severe");

    // term_{j+1}/term_j = z (a+j) / ((b1+j)(b2+j)(j+1)); summed in long double
    // since the terms grow before they decay for moderately large |z|.
    long double term = 1.0L;
    long double sum = 1.0L;
    int small_streak = 0;
    for (int j = 0; j < 10000; ++j) {
        term *= static_cast<long double>(p.z) * (p.a + j) /
                ((p.b1 + j) * (p.b2 + j) * (1.0 + j));
        sum += term;
        if (std::abs(static_cast<double>(term)) <
            1e-16 * std::abs(static_cast<double>(sum))) {
            if (++small_streak >= 3) return static_cast<double>(sum);
        } else {
            small_streak = 0;
        }
    }
    throw SeriesIllConditioned("hyp1f2: series did not converge");
}

namespace {

// Upper incomplete gamma Gamma(a, z) for complex z by modified Lentz
// continued fraction. Rapidly convergent for |z| of order 10 and above.
std::complex<double> upper_gamma_cf(double a, std::complex<double> z) {
    const double tiny = 1e-300;
    std::complex<double> b = z + 1.0 - a;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= 400; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const std::complex<double> delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::exp(-z + a * std::log(z)) * h;
    }
    throw SeriesIllConditioned("incomplete gamma continued fraction did not converge");
}

// Switch point between the 1F2 series and the incomplete-gamma form.
// At t = 20 the series (long double) still carries ~11 correct digits and the
// continued fraction is already at full precision.
constexpr double kSinSeriesMaxT = 20.0;

} // namespace

double frac_integral_sin_closed(double alpha, double t) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw InvalidOrder("frac_integral_sin_closed: alpha must lie in (0,2)");
    if (!(t > 0.0)) throw NonPositiveTime("frac_integral_sin_closed: t must be positive");

    if (t <= kSinSeriesMaxT) {
        const Hyp1F2Params p{1.0, alpha / 2.0 + 1.0, (alpha + 3.0) / 2.0, -t * t / 4.0};
        return std::pow(t, alpha + 1.0) / gamma(alpha + 2.0) * hyp1f2(p);
    }
    const std::complex<double> it{0.0, t};
    const std::complex<double> phase = std::polar(1.0, t - alpha * kPi / 2.0);
    return std::sin(t - alpha * kPi / 2.0) -
           (phase * upper_gamma_cf(alpha, it)).imag() / gamma(alpha);
}

double frac_integral_sin_asymptotic(double alpha, double t) {
    if (t < 20.0)
        throw std::invalid_argument("frac_integral_sin_asymptotic: requires t >= 20");
    if (alpha == 0.5)
        return 1.0 / std::sqrt(kPi * t) + (std::sin(t) - std::cos(t)) / std::sqrt(2.0);
    if (alpha == 1.5)
        return 2.0 * std::sqrt(t) / std::sqrt(kPi) -
               (std::sin(t) + std::cos(t)) / std::sqrt(2.0);
    throw UnsupportedOrder("frac_integral_sin_asymptotic: only alpha = 0.5 or 1.5");
}

namespace {

// B_{2j}/(2j)! for j = 1..10.
const double kBernoulliOverFactorial[10] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16};

} // namespace

double hurwitz_zeta(double s, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("hurwitz_zeta: q must be positive");
    if (s == 1.0) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");

    // Euler-Maclaurin from x = q + N with N chosen so the boundary terms
    // converge; valid on both sides of s = 1.
    const double x_min = 25.0 + 0.5 * std::abs(s);
    const int N = q >= x_min ? 0 : static_cast<int>(std::ceil(x_min - q));
    double sum = 0.0;
    for (int m = 0; m < N; ++m) sum += std::pow(q + m, -s);

    const double x = q + N;
    double acc = sum + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double fac = s;                        // (s)_{2j-1}
    double xe = std::pow(x, -s - 1.0);     // x^{-s-2j+1}
    for (int j = 1; j <= 10; ++j) {
        acc += kBernoulliOverFactorial[j - 1] * fac * xe;
        fac *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        xe /= x * x;
    }
    return acc;
}

double weyl_kernel_g(double s, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidOrder("weyl_kernel_g: alpha must lie in (0,1)");
    if (!(s > 0.0 && s <= kTwoPi))
        throw std::invalid_argument("weyl_kernel_g: s must lie in (0, 2*pi]");
    return std::pow(kTwoPi, alpha) * hurwitz_zeta(1.0 - alpha, s / kTwoPi) / gamma(alpha);
}

double weyl_kernel_g_truncated(double s, double alpha, long n) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidOrder("weyl_kernel_g_truncated: alpha must lie in (0,1)");
    if (!(s > 0.0 && s <= kTwoPi))
        throw std::invalid_argument("weyl_kernel_g_truncated: s must lie in (0, 2*pi]");
    if (n < 1) throw std::invalid_argument("weyl_kernel_g_truncated: n must be >= 1");

    // Kahan summation: the partial sum and the subtracted (2*pi*n)^alpha/alpha
    // are both large compared with the limit.
    double acc = 0.0, comp = 0.0;
    for (long m = 1; m <= n; ++m) {
        const double term = std::pow(s + kTwoPi * m, alpha - 1.0) - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    const double limit_part = kTwoPi * acc - std::pow(kTwoPi * n, alpha) / alpha;
    return (kTwoPi * std::pow(s, alpha - 1.0) + limit_part) / gamma(alpha);
}

} // namespace fracperiod
