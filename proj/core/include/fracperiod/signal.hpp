#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fracperiod/errors.hpp"

namespace fracperiod {

/// One spectral line: coefficient c_k of e^{i k (2*pi/T) t}.
struct Harmonic {
    int k = 0;
    std::complex<double> c;
};

/// Real T-periodic signal given as a finite Fourier series.
///
/// Only the k >= 0 half of the spectrum is stored; negative harmonics are
/// implied by the reality constraint c_{-k} = conj(c_k). Immutable after
/// construction, safe to share across threads.
class FourierSignal {
public:
    /// Builds from the k >= 0 half-spectrum. Reality holds by construction;
    /// the k = 0 entry has its imaginary part dropped after a sanity check.
    static FourierSignal from_half_spectrum(double period, std::vector<Harmonic> half);

    /// Builds from a full coefficient list. Every k entry must have a -k
    /// partner with exactly conjugate value, else InvalidSignalSpec.
    static FourierSignal from_full_spectrum(double period, const std::vector<Harmonic>& entries);

    static FourierSignal zero(double period = default_period());
    static FourierSignal constant(double value, double period = default_period());
    static FourierSignal sine(double period = default_period(), double amplitude = 1.0,
                              double offset = 0.0);
    static FourierSignal cosine(double period = default_period(), double amplitude = 1.0,
                                double offset = 0.0);
    /// Square wave Fourier series truncated at harmonic `order` (odd k only).
    static FourierSignal square_wave_truncated(double period, double amplitude, int order,
                                               double offset = 0.0);

    static double default_period(); // 2*pi

    double period() const { return period_; }
    /// Largest |k| with a stored coefficient (0 for a constant).
    int max_harmonic() const;
    /// c_k for any integer k; conjugate symmetry supplies k < 0.
    std::complex<double> coeff(int k) const;
    /// Stored k >= 0 lines, ascending in k. Zero lines may be absent.
    const std::vector<Harmonic>& half_spectrum() const { return half_; }

    bool is_zero() const;

    friend FourierSignal operator+(const FourierSignal& a, const FourierSignal& b);
    friend FourierSignal operator-(const FourierSignal& a, const FourierSignal& b);
    friend FourierSignal operator*(double s, const FourierSignal& f);

private:
    FourierSignal(double period, std::vector<Harmonic> half);

    double period_;
    std::vector<Harmonic> half_; // k >= 0, strictly ascending
};

/// Sum of the series at time t, reduced modulo the period first.
double eval(const FourierSignal& f, double t);

/// (1/T) * integral of f over one period; exactly Re c_0.
double mean(const FourierSignal& f);

/// Max of |f| over a dense grid (8K+64 points per period). A guaranteed
/// lower bracket of the true sup; coeff_abs_sum() is the upper bracket.
double sup_norm(const FourierSignal& f);

/// Sum of |c_k| over all harmonics (both signs); upper bound on sup |f|.
double coeff_abs_sum(const FourierSignal& f);

/// Integral of the positive part f^+ over one period. Requires mean zero
/// (tolerance 1e-12 * sup_norm), else NonZeroMean. Sign changes are located
/// by bisection on grid brackets; each piece integrates the exact
/// antiderivative of the series.
double positive_part_mass(const FourierSignal& f);

/// Termwise derivative: coefficients i*k*(2*pi/T)*c_k. Exact; mean is 0.
FourierSignal differentiate(const FourierSignal& f);

/// Exact antiderivative evaluated at t: F(t) = integral of f over [0, t].
/// F(t) = mean(f)*t + (periodic part); not itself a FourierSignal unless
/// mean(f) = 0.
double antiderivative_at(const FourierSignal& f, double t);

/// Periodic part P of the antiderivative: F(t) = mean(f)*t + P(t) with
/// P(0) chosen so F(0) = 0. P is a valid FourierSignal (generally with a
/// nonzero mean).
FourierSignal antiderivative_periodic_part(const FourierSignal& f);

/// Declarative description of a signal: a named builtin or an explicit
/// coefficient list. Mirrors the on-disk JSON format.
class SignalSpec {
public:
    enum class Kind { Builtin, Explicit };

    static SignalSpec builtin(const std::string& name, double period, double amplitude = 1.0,
                              double offset = 0.0, int order = 9);
    static SignalSpec explicit_list(double period, std::vector<Harmonic> entries);

    /// Parses {"period":..,"harmonics":[{"k":..,"re":..,"im":..},..]} or
    /// {"builtin":"sin","period":..,"amplitude":..,"offset":..}.
    /// Throws InvalidSignalSpec on malformed input, including any k entry
    /// without an exactly conjugate -k partner.
    static SignalSpec from_json_text(const std::string& text);
    static SignalSpec from_file(const std::string& path);

    /// Canonical JSON re-serialization (used to echo the spec into reports).
    std::string to_json_text() const;

    FourierSignal to_signal() const;

    Kind kind() const { return kind_; }
    const std::string& builtin_name() const { return name_; }
    double period() const { return period_; }
    double amplitude() const { return amplitude_; }
    double offset() const { return offset_; }
    int order() const { return order_; }

private:
    SignalSpec() = default;

    Kind kind_ = Kind::Builtin;
    std::string name_ = "sin";
    double period_ = 0.0;
    double amplitude_ = 1.0;
    double offset_ = 0.0;
    int order_ = 9;
    std::vector<Harmonic> entries_; // Explicit only; full list as given
};

} // namespace fracperiod
