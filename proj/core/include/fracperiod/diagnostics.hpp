#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracperiod/operators.hpp"
#include "fracperiod/quadrature.hpp"
#include "fracperiod/signal.hpp"

namespace fracperiod {

struct BoundednessVerdict {
    enum class Kind { Bounded, DivergesPlus, DivergesMinus };
    Kind kind = Kind::Bounded;
    double mean = 0.0;
    /// sup of |I^alpha f| over the probe grid; present only when Bounded.
    std::optional<double> witness_bound;
};

/// Quasi-periodicity defect Delta(t) = I^alpha f(t+T) - I^alpha f(t) together
/// with its decay bound T ||f|| t^{alpha-1} / Gamma(alpha).
struct DefectCurve {
    double alpha = 0.0;
    double period = 0.0;
    std::vector<std::pair<double, double>> samples;       // (t, Delta(t))
    std::vector<std::pair<double, double>> bound_samples; // (t, bound(t))
};

/// Split of a bounded fractional integral into a T-periodic part (the Weyl
/// integral, here an exact Fourier signal) plus a decaying remainder, with a
/// power-law fit |r(t)| ~ C t^p of the remainder.
struct Decomposition {
    FourierSignal periodic_part = FourierSignal::zero();
    std::vector<std::pair<double, double>> remainder_samples; // (t, r(t))
    double fit_constant = 0.0;
    double fit_exponent = 0.0;
};

struct NonPeriodicityCertificate {
    double t_star = 0.0;
    double delta = 0.0;
};

struct GrowthFit {
    double exponent = 0.0;
    double constant = 0.0;
};

struct DiagnosticsReport {
    std::string signal_spec_json; // echo of the input spec
    double alpha = 0.0;
    std::string op = "rl-integral";
    BoundednessVerdict verdict;
    DefectCurve defect;
    std::optional<Decomposition> decomposition;        // present iff Bounded
    std::optional<NonPeriodicityCertificate> nonperiodicity;
    std::optional<GrowthFit> growth;                   // present iff not Bounded
    /// RL derivative reports carry the explicit decaying correction term
    /// f(0) t^{-alpha}/Gamma(1-alpha) as (coefficient, exponent).
    std::optional<std::pair<double, double>> rl_correction;
    QuadratureConfig config;
    /// Per-sample table backing the CSV output; phi/remainder are NaN when no
    /// decomposition exists.
    struct Row {
        double t, i_alpha_f, phi, remainder, defect, bound;
    };
    std::vector<Row> rows;

    /// JSON with a fixed field order.
    std::string to_json_text() const;
    /// CSV columns: t, I_alpha_f, phi, remainder, defect, bound. Config echo
    /// rides in leading '#' comment lines.
    void to_csv(std::ostream& out) const;
};

/// Default probe grid: 129 points on [0, 40T], linear up to T and log-spaced
/// beyond.
std::vector<double> default_probe_grid(double period, int points = 129,
                                       double max_periods = 40.0);

/// Theorem-level dichotomy: I^alpha f bounded iff mean(f) = 0 (tolerance
/// 1e-12 (1+||f||)). Bounded verdicts carry a probe-grid witness bound;
/// unbounded ones take their sign from the mean.
BoundednessVerdict classify_boundedness(const FourierSignal& f, double alpha,
                                        const QuadratureConfig& cfg = {});

/// Defect curve from the exact single-period identity
/// Delta(t) = (1/Gamma(alpha)) * integral over [0,T] of (t+T-s)^{alpha-1} f(s) ds,
/// avoiding the cancellation of subtracting two large quadratures.
DefectCurve sap_defect(const FourierSignal& f, double alpha,
                       const std::vector<double>& t_grid,
                       const QuadratureConfig& cfg = {});

/// Periodic-plus-decaying split for mean-zero f (throws NonZeroMean
/// otherwise). The decay exponent is fitted by log-log least squares on the
/// envelope of |r| local maxima over the upper half of t_grid.
Decomposition decompose_asymptotic(const FourierSignal& f, double alpha,
                                   const std::vector<double>& t_grid,
                                   const QuadratureConfig& cfg = {});

/// Finite witness that I^alpha f is not T-periodic: the t in (0, 3T]
/// maximizing |Delta(t)| (65-point grid plus local refinement). Throws
/// CertificateNotFound if the maximum is below 10x quadrature tolerance,
/// which cannot happen for nonzero f.
NonPeriodicityCertificate nonperiodicity_certificate(const FourierSignal& f, double alpha,
                                                     const QuadratureConfig& cfg = {});

/// Power-law fit I^alpha f(t) ~ C t^p over the upper half of t_grid for
/// signals with nonzero mean (throws ZeroMean otherwise). Expect p near alpha
/// and C near mean(f)/Gamma(1+alpha).
GrowthFit growth_fit(const FourierSignal& f, double alpha,
                     const std::vector<double>& t_grid,
                     const QuadratureConfig& cfg = {});

/// Full pipeline on I^alpha f: verdict, defect curve, decomposition or
/// growth fit, and the non-periodicity certificate.
DiagnosticsReport run_diagnostics(const FourierSignal& f, double alpha,
                                  const QuadratureConfig& cfg = {},
                                  const std::string& spec_echo = "{}");

enum class DerivativeKind { Caputo, RL };

/// Derivative-side diagnostics: the Caputo derivative of f is the order
/// (1-alpha) integral of f', whose mean is always zero, so the bounded
/// pipeline applies to f'. RL adds the explicit correction term
/// f(0) t^{-alpha}/Gamma(1-alpha) to the report.
DiagnosticsReport derivative_diagnostics(const FourierSignal& f, double alpha,
                                         DerivativeKind kind,
                                         const QuadratureConfig& cfg = {},
                                         const std::string& spec_echo = "{}");

} // namespace fracperiod
