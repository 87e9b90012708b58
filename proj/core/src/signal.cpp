#include "fracperiod/signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace fracperiod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double omega(const FourierSignal& f) { return kTwoPi / f.period(); }

/// Reduce t into [0, T). fmod is exact, so periodicity survives large t.
double reduce(double t, double T) {
    double r = std::fmod(t, T);
    if (r < 0.0) r += T;
    return r;
}

int grid_points(const FourierSignal& f) { return 8 * f.max_harmonic() + 64; }

} // namespace

FourierSignal::FourierSignal(double period, std::vector<Harmonic> half)
    : period_(period), half_(std::move(half)) {}

double FourierSignal::default_period() { return kTwoPi; }

FourierSignal FourierSignal::from_half_spectrum(double period, std::vector<Harmonic> half) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidSignalSpec("period must be positive and finite");
    std::map<int, std::complex<double>> merged;
    for (const auto& h : half) {
        if (h.k < 0) throw InvalidSignalSpec("half spectrum takes k >= 0 only");
        if (!std::isfinite(h.c.real()) || !std::isfinite(h.c.imag()))
            throw InvalidSignalSpec("non-finite coefficient");
        merged[h.k] += h.c;
    }
    std::vector<Harmonic> out;
    out.reserve(merged.size());
    for (auto& [k, c] : merged) {
        if (k == 0) c = {c.real(), 0.0}; // reality forces a real mean
        if (c != std::complex<double>{0.0, 0.0}) out.push_back({k, c});
    }
    return FourierSignal(period, std::move(out));
}

FourierSignal FourierSignal::from_full_spectrum(double period,
                                                const std::vector<Harmonic>& entries) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidSignalSpec("period must be positive and finite");
    std::map<int, std::complex<double>> coeffs;
    for (const auto& h : entries) {
        if (!std::isfinite(h.c.real()) || !std::isfinite(h.c.imag()))
            throw InvalidSignalSpec("non-finite coefficient");
        if (coeffs.count(h.k)) throw InvalidSignalSpec("duplicate harmonic k=" + std::to_string(h.k));
        coeffs[h.k] = h.c;
    }
    std::vector<Harmonic> half;
    for (const auto& [k, c] : coeffs) {
        if (k == 0) {
            if (c.imag() != 0.0)
                throw InvalidSignalSpec("k=0 coefficient must be real");
            half.push_back({0, c});
            continue;
        }
        const auto partner = coeffs.find(-k);
        if (partner == coeffs.end())
            throw InvalidSignalSpec("harmonic k=" + std::to_string(k) +
                                    " lacks a -k partner");
        if (partner->second != std::conj(c))
            throw InvalidSignalSpec("coefficients at k=" + std::to_string(k) +
                                    " are not conjugate-symmetric");
        if (k > 0) half.push_back({k, c});
    }
    std::erase_if(half, [](const Harmonic& h) {
        return h.c == std::complex<double>{0.0, 0.0};
    });
    return FourierSignal(period, std::move(half));
}

FourierSignal FourierSignal::zero(double period) {
    return from_half_spectrum(period, {});
}

FourierSignal FourierSignal::constant(double value, double period) {
    return from_half_spectrum(period, {{0, {value, 0.0}}});
}

FourierSignal FourierSignal::sine(double period, double amplitude, double offset) {
    // a*sin = a*(e^{iwt} - e^{-iwt})/(2i) -> c_1 = -i a/2
    return from_half_spectrum(period, {{0, {offset, 0.0}}, {1, {0.0, -amplitude / 2.0}}});
}

FourierSignal FourierSignal::cosine(double period, double amplitude, double offset) {
    return from_half_spectrum(period, {{0, {offset, 0.0}}, {1, {amplitude / 2.0, 0.0}}});
}

FourierSignal FourierSignal::square_wave_truncated(double period, double amplitude, int order,
                                                   double offset) {
    if (order < 1) throw InvalidSignalSpec("square wave truncation order must be >= 1");
    std::vector<Harmonic> half{{0, {offset, 0.0}}};
    for (int k = 1; k <= order; k += 2) {
        const double a = amplitude * 4.0 / (std::numbers::pi * k);
        half.push_back({k, {0.0, -a / 2.0}});
    }
    return from_half_spectrum(period, std::move(half));
}

int FourierSignal::max_harmonic() const {
    return half_.empty() ? 0 : half_.back().k;
}

std::complex<double> FourierSignal::coeff(int k) const {
    const int kk = std::abs(k);
    const auto it = std::lower_bound(half_.begin(), half_.end(), kk,
                                     [](const Harmonic& h, int v) { return h.k < v; });
    if (it == half_.end() || it->k != kk) return {0.0, 0.0};
    return k >= 0 ? it->c : std::conj(it->c);
}

bool FourierSignal::is_zero() const { return half_.empty(); }

FourierSignal operator+(const FourierSignal& a, const FourierSignal& b) {
    if (a.period() != b.period())
        throw InvalidSignalSpec("cannot add signals of different periods");
    std::vector<Harmonic> half = a.half_;
    half.insert(half.end(), b.half_.begin(), b.half_.end());
    return FourierSignal::from_half_spectrum(a.period(), std::move(half));
}

FourierSignal operator-(const FourierSignal& a, const FourierSignal& b) {
    return a + (-1.0) * b;
}

FourierSignal operator*(double s, const FourierSignal& f) {
    std::vector<Harmonic> half = f.half_;
    for (auto& h : half) h.c *= s;
    return FourierSignal::from_half_spectrum(f.period(), std::move(half));
}

double eval(const FourierSignal& f, double t) {
    const double tau = reduce(t, f.period());
    const double w = omega(f);
    double acc = 0.0;
    for (const auto& h : f.half_spectrum()) {
        if (h.k == 0) {
            acc += h.c.real();
        } else {
            // c_k e^{ikwt} + conj pair = 2 Re(c_k e^{ikwt})
            acc += 2.0 * (h.c * std::polar(1.0, h.k * w * tau)).real();
        }
    }
    return acc;
}

double mean(const FourierSignal& f) { return f.coeff(0).real(); }

double sup_norm(const FourierSignal& f) {
    const int n = grid_points(f);
    const double T = f.period();
    double best = 0.0;
    for (int i = 0; i < n; ++i)
        best = std::max(best, std::abs(eval(f, T * i / n)));
    return best;
}

double coeff_abs_sum(const FourierSignal& f) {
    double acc = 0.0;
    for (const auto& h : f.half_spectrum())
        acc += (h.k == 0 ? 1.0 : 2.0) * std::abs(h.c);
    return acc;
}

FourierSignal differentiate(const FourierSignal& f) {
    const double w = omega(f);
    std::vector<Harmonic> half;
    for (const auto& h : f.half_spectrum()) {
        if (h.k == 0) continue;
        half.push_back({h.k, h.c * std::complex<double>{0.0, h.k * w}});
    }
    return FourierSignal::from_half_spectrum(f.period(), std::move(half));
}

double antiderivative_at(const FourierSignal& f, double t) {
    const double w = omega(f);
    double acc = mean(f) * t;
    for (const auto& h : f.half_spectrum()) {
        if (h.k == 0) continue;
        const std::complex<double> ikw{0.0, h.k * w};
        const std::complex<double> v = h.c / ikw * (std::polar(1.0, h.k * w * t) - 1.0);
        acc += 2.0 * v.real();
    }
    return acc;
}

FourierSignal antiderivative_periodic_part(const FourierSignal& f) {
    const double w = omega(f);
    std::vector<Harmonic> half;
    double c0 = 0.0;
    for (const auto& h : f.half_spectrum()) {
        if (h.k == 0) continue;
        const std::complex<double> ck = h.c / std::complex<double>{0.0, h.k * w};
        half.push_back({h.k, ck});
        c0 -= 2.0 * ck.real(); // so that P(0) = 0
    }
    half.push_back({0, {c0, 0.0}});
    return FourierSignal::from_half_spectrum(f.period(), std::move(half));
}

double positive_part_mass(const FourierSignal& f) {
    const double tol = 1e-12 * sup_norm(f);
    if (std::abs(mean(f)) > tol)
        throw NonZeroMean("positive_part_mass requires a mean-zero signal");
    if (f.is_zero()) return 0.0;

    const double T = f.period();
    const int n = grid_points(f);

    // Nodes of the piecewise decomposition: period endpoints plus every sign
    // change, located by bisection on grid brackets.
    std::vector<double> nodes{0.0};
    double prev_t = 0.0;
    double prev_v = eval(f, 0.0);
    for (int i = 1; i <= n; ++i) {
        const double t = T * i / n;
        const double v = eval(f, t);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_t, hi = t, flo = prev_v;
            for (int it = 0; it < 80 && (hi - lo) > 1e-15 * T; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval(f, mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            nodes.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
    nodes.push_back(T);

    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        if (b - a <= 0.0) continue;
        if (eval(f, 0.5 * (a + b)) > 0.0)
            mass += antiderivative_at(f, b) - antiderivative_at(f, a);
    }
    return mass;
}

// ---------------------------------------------------------------------------
// SignalSpec
// ---------------------------------------------------------------------------

namespace {

const char* kBuiltins[] = {"sin", "cos", "const", "square-wave-truncated"};

bool known_builtin(const std::string& name) {
    for (const char* b : kBuiltins)
        if (name == b) return true;
    return false;
}

double require_number(const nlohmann::json& j, const char* key, double fallback,
                      bool required) {
    if (!j.contains(key)) {
        if (required) throw InvalidSignalSpec(std::string("missing field: ") + key);
        return fallback;
    }
    if (!j[key].is_number()) throw InvalidSignalSpec(std::string("field must be a number: ") + key);
    return j[key].get<double>();
}

} // namespace

SignalSpec SignalSpec::builtin(const std::string& name, double period, double amplitude,
                               double offset, int order) {
    if (!known_builtin(name)) throw InvalidSignalSpec("unknown builtin: " + name);
    if (!(period > 0.0)) throw InvalidSignalSpec("period must be positive");
    SignalSpec s;
    s.kind_ = Kind::Builtin;
    s.name_ = name;
    s.period_ = period;
    s.amplitude_ = amplitude;
    s.offset_ = offset;
    s.order_ = order;
    return s;
}

SignalSpec SignalSpec::explicit_list(double period, std::vector<Harmonic> entries) {
    SignalSpec s;
    s.kind_ = Kind::Explicit;
    s.period_ = period;
    s.entries_ = std::move(entries);
    s.to_signal(); // validate eagerly
    return s;
}

SignalSpec SignalSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSignalSpec(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidSignalSpec("signal spec must be a JSON object");

    if (j.contains("builtin")) {
        if (!j["builtin"].is_string()) throw InvalidSignalSpec("builtin must be a string");
        const std::string name = j["builtin"].get<std::string>();
        const double period = require_number(j, "period", 0.0, /*required=*/true);
        const double amplitude = require_number(j, "amplitude", 1.0, false);
        const double offset = require_number(j, "offset", 0.0, false);
        int order = 9;
        if (j.contains("order")) {
            if (!j["order"].is_number_integer())
                throw InvalidSignalSpec("order must be an integer");
            order = j["order"].get<int>();
        }
        return builtin(name, period, amplitude, offset, order);
    }

    if (!j.contains("harmonics"))
        throw InvalidSignalSpec("spec needs either \"builtin\" or \"harmonics\"");
    if (!j["harmonics"].is_array()) throw InvalidSignalSpec("harmonics must be an array");
    const double period = require_number(j, "period", 0.0, /*required=*/true);

    std::vector<Harmonic> entries;
    for (const auto& e : j["harmonics"]) {
        if (!e.is_object() || !e.contains("k"))
            throw InvalidSignalSpec("each harmonic needs fields k, re, im");
        if (!e["k"].is_number_integer()) throw InvalidSignalSpec("k must be an integer");
        Harmonic h;
        h.k = e["k"].get<int>();
        h.c = {require_number(e, "re", 0.0, false), require_number(e, "im", 0.0, false)};
        entries.push_back(h);
    }
    return explicit_list(period, std::move(entries));
}

SignalSpec SignalSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSignalSpec("cannot open signal file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string SignalSpec::to_json_text() const {
    nlohmann::ordered_json j;
    if (kind_ == Kind::Builtin) {
        j["builtin"] = name_;
        j["period"] = period_;
        j["amplitude"] = amplitude_;
        j["offset"] = offset_;
        if (name_ == std::string("square-wave-truncated")) j["order"] = order_;
    } else {
        j["period"] = period_;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& h : entries_) {
            nlohmann::ordered_json e;
            e["k"] = h.k;
            e["re"] = h.c.real();
            e["im"] = h.c.imag();
            arr.push_back(e);
        }
        j["harmonics"] = arr;
    }
    return j.dump();
}

FourierSignal SignalSpec::to_signal() const {
    if (kind_ == Kind::Explicit)
        return FourierSignal::from_full_spectrum(period_, entries_);
    if (name_ == std::string("sin"))
        return FourierSignal::sine(period_, amplitude_, offset_);
    if (name_ == std::string("cos"))
        return FourierSignal::cosine(period_, amplitude_, offset_);
    if (name_ == std::string("const"))
        return FourierSignal::constant(amplitude_ + offset_, period_);
    return FourierSignal::square_wave_truncated(period_, amplitude_, order_, offset_);
}

} // namespace fracperiod
