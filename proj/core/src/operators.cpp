#include "fracperiod/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fracperiod/special.hpp"

namespace fracperiod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_mean_zero(const FourierSignal& f, const char* who) {
    if (std::abs(mean(f)) > 1e-12 * (1.0 + sup_norm(f)))
        throw NonZeroMean(std::string(who) + ": requires a mean-zero signal");
}

} // namespace

bool alpha_admissible(OperatorKind kind, double alpha) {
    switch (kind) {
        case OperatorKind::RLIntegral: return alpha > 0.0 && alpha < 2.0;
        case OperatorKind::CaputoDerivative:
        case OperatorKind::RLDerivative:
        case OperatorKind::WeylIntegral: return alpha > 0.0 && alpha < 1.0;
    }
    return false;
}

std::string operator_name(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::RLIntegral: return "rl-integral";
        case OperatorKind::CaputoDerivative: return "caputo";
        case OperatorKind::RLDerivative: return "rl-derivative";
        case OperatorKind::WeylIntegral: return "weyl";
    }
    return "?";
}

double rl_integral(const FourierSignal& f, FracOrder alpha, double t,
                   const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw NonPositiveTime("rl_integral: t must be positive");
    const double a = alpha.value();
    if (a <= 1.0) return singular_integral(f, alpha, t, cfg);

    // I^a f = I^{a-1}(I^1 f); I^1 f(t) = mean(f) t + P(t) with P periodic.
    const FourierSignal P = antiderivative_periodic_part(f);
    const double beta = a - 1.0;
    double value = singular_integral(P, FracOrder::integral(beta), t, cfg);
    const double c0 = mean(f);
    if (c0 != 0.0) value += c0 * std::pow(t, a) / gamma(a + 1.0);
    return value;
}

double caputo_derivative(const FourierSignal& f, FracOrder alpha, double t,
                         const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw NonPositiveTime("caputo_derivative: t must be positive");
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw InvalidOrder("caputo_derivative: alpha must lie in (0,1)");
    const FourierSignal df = differentiate(f);
    if (df.is_zero()) return 0.0;
    return singular_integral(df, FracOrder::integral(1.0 - a), t, cfg);
}

double rl_derivative(const FourierSignal& f, FracOrder alpha, double t,
                     const QuadratureConfig& cfg) {
    if (t < 1e-12) throw SingularAtZero("rl_derivative: t too close to 0");
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw InvalidOrder("rl_derivative: alpha must lie in (0,1)");
    const double correction = eval(f, 0.0) * std::pow(t, -a) / gamma(1.0 - a);
    return caputo_derivative(f, alpha, t, cfg) + correction;
}

FourierSignal weyl_periodic_signal(const FourierSignal& f, FracOrder alpha) {
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw InvalidOrder("weyl: alpha must lie in (0,1)");
    require_mean_zero(f, "weyl_periodic_signal");
    const double w = kTwoPi / f.period();
    std::vector<Harmonic> half;
    for (const auto& h : f.half_spectrum()) {
        if (h.k == 0) continue;
        // (i k w)^{-a} = (k w)^{-a} e^{-i a pi/2} for k > 0, principal branch
        const std::complex<double> mult =
            std::polar(std::pow(h.k * w, -a), -a * kPi / 2.0);
        half.push_back({h.k, h.c * mult});
    }
    return FourierSignal::from_half_spectrum(f.period(), std::move(half));
}

double weyl_integral_fourier(const FourierSignal& f, FracOrder alpha, double t) {
    return eval(weyl_periodic_signal(f, alpha), t);
}

// ---------------------------------------------------------------------------
// Limit route
// ---------------------------------------------------------------------------

namespace {

// Gauss-Legendre moments M_m = integral over [0, T] of r^m f(r) dr, m = 1..count.
// Quadrature only; keeps this route free of the Fourier multiplier algebra.
std::vector<double> power_moments(const FourierSignal& f, int count) {
    const double T = f.period();
    const int panels = std::max(16, 4 * f.max_harmonic());
    // 8-point Gauss-Legendre nodes on [0, 1]
    static const double kN[8] = {0.019855071751231884158219565715264,
                                 0.101666761293186630204223031762085,
                                 0.237233795041835507091130475405376,
                                 0.408282678752175097530261928820448,
                                 0.591717321247824902469738071179552,
                                 0.762766204958164492908869524594624,
                                 0.898333238706813369795776968237915,
                                 0.980144928248768115841780434284736};
    static const double kW[8] = {0.050614268145188129576265677154981,
                                 0.111190517226687235272177997213120,
                                 0.156853322938943643668981100993300,
                                 0.181341891689180991482575224638597,
                                 0.181341891689180991482575224638597,
                                 0.156853322938943643668981100993300,
                                 0.111190517226687235272177997213120,
                                 0.050614268145188129576265677154981};
    std::vector<double> moments(count + 1, 0.0);
    const double h = T / panels;
    for (int p = 0; p < panels; ++p) {
        for (int i = 0; i < 8; ++i) {
            const double r = (p + kN[i]) * h;
            const double fw = eval(f, r) * kW[i] * h;
            double rm = r;
            for (int m = 1; m <= count; ++m) {
                moments[m] += rm * fw;
                rm *= r;
            }
        }
    }
    return moments;
}

// Remainder of the block series past J whole periods:
//   sum_{j>J} int_0^T (t+jT-r)^{a-1} f(r) dr
//     = sum_{m>=1} C(a-1, m) (-1)^m M_m T^{a-1-m} zeta(m+1-a, J+1+t/T),
// a convergent expansion once t + (J+1)T > 2T.
double tail_remainder(const FourierSignal& f, double a, double t, long J) {
    const double T = f.period();
    const double q = J + 1 + t / T;
    const int max_m = 24;
    const std::vector<double> M = power_moments(f, max_m);
    double acc = 0.0;
    double binom = 1.0; // C(a-1, m) (-1)^m
    int small_streak = 0;
    for (int m = 1; m <= max_m; ++m) {
        binom *= -(a - 1.0 - (m - 1)) / m;
        const double term =
            binom * M[m] * std::pow(T, a - 1.0 - m) * hurwitz_zeta(m + 1.0 - a, q);
        acc += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) {
            if (++small_streak >= 2 && m > 4) break;
        } else {
            small_streak = 0;
        }
    }
    return acc;
}

} // namespace

double weyl_integral_limit(const FourierSignal& f, FracOrder alpha, double t, double eps,
                           const QuadratureConfig& cfg, TailMode mode) {
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw InvalidOrder("weyl_integral_limit: alpha must lie in (0,1)");
    if (!(eps > 0.0)) throw std::invalid_argument("weyl_integral_limit: eps must be positive");
    require_mean_zero(f, "weyl_integral_limit");
    if (f.is_zero()) return 0.0;

    // The limit is T-periodic; shift nonpositive t into (0, T].
    const double T = f.period();
    if (t <= 0.0) t += std::ceil((1e-9 - t) / T) * T;

    const double inv_gamma = 1.0 / gamma(a);
    const double head = singular_integral(f, FracOrder::integral(a), t, cfg);

    double tail = 0.0;
    if (mode == TailMode::accelerated) {
        const long J = 12;
        for (long j = 1; j <= J; ++j)
            tail += period_block_integral(f, a, t + j * T, cfg);
        tail += tail_remainder(f, a, t, J);
    } else {
        // plain truncation: c (t+nT)^{a-1} <= eps' with c the positive-part mass
        const double c = positive_part_mass(f);
        const double eps_tail = 0.5 * eps * gamma(a);
        double n_needed = 1.0;
        if (c > 0.0 && c * std::pow(t + T, a - 1.0) > eps_tail) {
            n_needed = std::ceil((std::pow(eps_tail / c, 1.0 / (a - 1.0)) - t) / T);
        }
        if (!(n_needed < 1e6))
            throw DepthImpractical("weyl_integral_limit: direct truncation needs " +
                                   std::to_string(n_needed) + " blocks");
        const long n = static_cast<long>(std::max(1.0, n_needed));
        tail = tail_integral(f, alpha, t, n, cfg);
    }
    return head + inv_gamma * tail;
}

// ---------------------------------------------------------------------------
// Kernel route
// ---------------------------------------------------------------------------

double weyl_integral_kernel(const FourierSignal& f, FracOrder alpha, double t,
                            const QuadratureConfig& cfg) {
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw InvalidOrder("weyl_integral_kernel: alpha must lie in (0,1)");
    require_mean_zero(f, "weyl_integral_kernel");
    if (f.is_zero()) return 0.0;

    // Rescale to period 2*pi: same coefficients, dilated argument. Kernel
    // homogeneity gives the exact factor (T/2pi)^a on the way back.
    const double T = f.period();
    std::vector<Harmonic> half = f.half_spectrum();
    const FourierSignal fh = FourierSignal::from_half_spectrum(kTwoPi, std::move(half));
    const double tau = kTwoPi * t / T;
    const double inv_gamma = 1.0 / gamma(a);

    // Singular term: (2pi/Gamma(a)) int f(tau-s) s^{a-1} ds, substitution
    // u = s^a flattens the endpoint.
    const double upper = std::pow(kTwoPi, a);
    const auto head = [&](double u) { return eval(fh, tau - std::pow(u, 1.0 / a)); };
    const double singular =
        kTwoPi * inv_gamma / a *
        adaptive_gauss_kronrod(head, 0.0, upper, cfg.rel_tol, cfg.abs_tol, 4000);

    // Smooth remainder of g: (2pi)^a zeta(1-a, 1+s/2pi)/Gamma(a).
    const auto smooth = [&](double s) {
        return eval(fh, tau - s) * std::pow(kTwoPi, a) *
               hurwitz_zeta(1.0 - a, 1.0 + s / kTwoPi) * inv_gamma;
    };
    const double regular =
        adaptive_gauss_kronrod(smooth, 0.0, kTwoPi, cfg.rel_tol, cfg.abs_tol, 4000);

    return std::pow(T / kTwoPi, a) * (singular + regular) / kTwoPi;
}

} // namespace fracperiod
