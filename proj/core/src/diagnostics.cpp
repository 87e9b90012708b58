#include "fracperiod/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fracperiod/parallel.hpp"
#include "fracperiod/special.hpp"

namespace fracperiod {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_alpha_01(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidOrder(std::string(who) + ": alpha must lie in (0,1)");
}

double mean_tolerance(const FourierSignal& f) { return 1e-12 * (1.0 + sup_norm(f)); }

/// log-log least squares of y ~ C x^p over (x_i, y_i); returns {C, p}.
std::pair<double, double> power_law_fit(const std::vector<std::pair<double, double>>& pts) {
    double sl = 0.0, sy = 0.0, sll = 0.0, sly = 0.0;
    std::size_t n = 0;
    for (const auto& [x, y] : pts) {
        if (!(x > 0.0) || !(y > 0.0)) continue;
        const double lx = std::log(x), ly = std::log(y);
        sl += lx;
        sy += ly;
        sll += lx * lx;
        sly += lx * ly;
        ++n;
    }
    if (n < 2) return {0.0, 0.0};
    const double denom = n * sll - sl * sl;
    const double p = (n * sly - sl * sy) / denom;
    const double logc = (sy - p * sl) / n;
    return {std::exp(logc), p};
}

double defect_at(const FourierSignal& f, double alpha, double t,
                 const QuadratureConfig& cfg) {
    return period_block_integral(f, alpha, t + f.period(), cfg) / gamma(alpha);
}

} // namespace

std::vector<double> default_probe_grid(double period, int points, double max_periods) {
    std::vector<double> grid;
    grid.reserve(points);
    const int linear = points / 4;          // [0, T]
    const int logn = points - linear - 1;   // (T, max_periods*T]
    grid.push_back(0.0);
    for (int i = 1; i <= linear; ++i) grid.push_back(period * i / linear);
    const double ratio = std::pow(max_periods, 1.0 / logn);
    double t = period;
    for (int i = 1; i <= logn; ++i) {
        t *= ratio;
        grid.push_back(t);
    }
    return grid;
}

BoundednessVerdict classify_boundedness(const FourierSignal& f, double alpha,
                                        const QuadratureConfig& cfg) {
    require_alpha_01(alpha, "classify_boundedness");
    BoundednessVerdict v;
    v.mean = mean(f);
    if (std::abs(v.mean) > mean_tolerance(f)) {
        v.kind = v.mean > 0.0 ? BoundednessVerdict::Kind::DivergesPlus
                              : BoundednessVerdict::Kind::DivergesMinus;
        return v;
    }
    v.kind = BoundednessVerdict::Kind::Bounded;
    if (f.is_zero()) {
        v.witness_bound = 0.0;
        return v;
    }

    // Witness probe: sup |I^alpha f| on the default grid. Informational, so a
    // relaxed mesh is enough.
    QuadratureConfig probe = cfg;
    probe.rel_tol = std::max(cfg.rel_tol, 1e-7);
    probe.abs_tol = std::max(cfg.abs_tol, 1e-9);
    probe.panels_per_period = std::min(cfg.panels_per_period, 32);
    const std::vector<double> grid = default_probe_grid(f.period());
    std::vector<double> vals(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        if (grid[i] > 0.0)
            vals[i] = std::abs(rl_integral(f, FracOrder::integral(alpha), grid[i], probe));
    });
    v.witness_bound = *std::max_element(vals.begin(), vals.end());
    return v;
}

DefectCurve sap_defect(const FourierSignal& f, double alpha,
                       const std::vector<double>& t_grid, const QuadratureConfig& cfg) {
    require_alpha_01(alpha, "sap_defect");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0))
            throw NonPositiveTime("sap_defect: grid times must be positive");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("sap_defect: grid must be increasing");
    }
    DefectCurve curve;
    curve.alpha = alpha;
    curve.period = f.period();
    curve.samples.resize(t_grid.size());
    curve.bound_samples.resize(t_grid.size());
    const double bound_scale = f.period() * sup_norm(f) / gamma(alpha);
    parallel_for(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        const double d = f.is_zero() ? 0.0 : defect_at(f, alpha, t, cfg);
        curve.samples[i] = {t, d};
        curve.bound_samples[i] = {t, bound_scale * std::pow(t, alpha - 1.0)};
    });
    return curve;
}

Decomposition decompose_asymptotic(const FourierSignal& f, double alpha,
                                   const std::vector<double>& t_grid,
                                   const QuadratureConfig& cfg) {
    require_alpha_01(alpha, "decompose_asymptotic");
    if (std::abs(mean(f)) > mean_tolerance(f))
        throw NonZeroMean("decompose_asymptotic: requires a mean-zero signal");

    Decomposition d;
    if (f.is_zero()) {
        d.periodic_part = FourierSignal::zero(f.period());
        for (double t : t_grid) d.remainder_samples.push_back({t, 0.0});
        return d;
    }
    d.periodic_part = weyl_periodic_signal(f, FracOrder::weyl(alpha));
    d.remainder_samples.resize(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        const double r = rl_integral(f, FracOrder::integral(alpha), t, cfg) -
                         eval(d.periodic_part, t);
        d.remainder_samples[i] = {t, r};
    });

    // Envelope fit: |r| oscillates for general f, so fit the local maxima of
    // |r| over the upper half of the grid; fall back to all points when the
    // tail is monotone.
    const std::size_t lo = t_grid.size() / 2;
    std::vector<std::pair<double, double>> envelope;
    for (std::size_t i = lo; i < d.remainder_samples.size(); ++i) {
        const double cur = std::abs(d.remainder_samples[i].second);
        const double prev =
            i > 0 ? std::abs(d.remainder_samples[i - 1].second) : -1.0;
        const double next = i + 1 < d.remainder_samples.size()
                                ? std::abs(d.remainder_samples[i + 1].second)
                                : -1.0;
        if (cur >= prev && cur >= next && cur > 1e-14)
            envelope.push_back({d.remainder_samples[i].first, cur});
    }
    if (envelope.size() < 4) {
        envelope.clear();
        for (std::size_t i = lo; i < d.remainder_samples.size(); ++i) {
            const double cur = std::abs(d.remainder_samples[i].second);
            if (cur > 1e-14) envelope.push_back({d.remainder_samples[i].first, cur});
        }
    }
    const auto [c, p] = power_law_fit(envelope);
    d.fit_constant = c;
    d.fit_exponent = p;
    return d;
}

NonPeriodicityCertificate nonperiodicity_certificate(const FourierSignal& f, double alpha,
                                                     const QuadratureConfig& cfg) {
    require_alpha_01(alpha, "nonperiodicity_certificate");
    if (f.is_zero())
        throw std::invalid_argument("nonperiodicity_certificate: signal must be nonzero");

    const double T = f.period();
    const int n = 65;
    double best_t = 0.0, best = -1.0;
    std::vector<double> vals(n, 0.0);
    std::vector<double> ts(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        ts[i] = 3.0 * T * (i + 1) / n;
        vals[i] = std::abs(defect_at(f, alpha, ts[i], cfg));
    });
    for (int i = 0; i < n; ++i)
        if (vals[i] > best) {
            best = vals[i];
            best_t = ts[i];
        }

    // two rounds of local grid refinement around the max
    double radius = 3.0 * T / n;
    for (int round = 0; round < 2; ++round) {
        const double lo = std::max(1e-6 * T, best_t - radius);
        const double hi = std::min(3.0 * T, best_t + radius);
        for (int i = 0; i <= 16; ++i) {
            const double t = lo + (hi - lo) * i / 16;
            const double v = std::abs(defect_at(f, alpha, t, cfg));
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        radius /= 8.0;
    }

    const double threshold = 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * best);
    if (!(best > threshold))
        throw CertificateNotFound("nonperiodicity_certificate: defect below threshold");
    return {best_t, best};
}

GrowthFit growth_fit(const FourierSignal& f, double alpha,
                     const std::vector<double>& t_grid, const QuadratureConfig& cfg) {
    require_alpha_01(alpha, "growth_fit");
    const double m = mean(f);
    if (std::abs(m) <= mean_tolerance(f))
        throw ZeroMean("growth_fit: requires a signal with nonzero mean");

    const std::size_t lo = t_grid.size() / 2;
    std::vector<std::pair<double, double>> pts(t_grid.size() - lo);
    parallel_for(pts.size(), [&](std::size_t i) {
        const double t = t_grid[lo + i];
        pts[i] = {t, std::abs(rl_integral(f, FracOrder::integral(alpha), t, cfg))};
    });
    const auto [c, p] = power_law_fit(pts);
    return {p, m > 0.0 ? c : -c};
}

// ---------------------------------------------------------------------------
// Report assembly and serialization
// ---------------------------------------------------------------------------

namespace {

std::vector<double> report_grid(double period) {
    // positive, log-spaced; spans transient through asymptotic regime
    const int n = 65;
    std::vector<double> grid(n);
    const double lo = period / 4.0, hi = 40.0 * period;
    for (int i = 0; i < n; ++i)
        grid[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return grid;
}

DiagnosticsReport assemble(const FourierSignal& f, double alpha, const std::string& op,
                           const QuadratureConfig& cfg, const std::string& spec_echo) {
    DiagnosticsReport rep;
    rep.signal_spec_json = spec_echo;
    rep.alpha = alpha;
    rep.op = op;
    rep.config = cfg;
    rep.verdict = classify_boundedness(f, alpha, cfg);

    const std::vector<double> grid = report_grid(f.period());
    rep.defect = sap_defect(f, alpha, grid, cfg);

    const bool bounded = rep.verdict.kind == BoundednessVerdict::Kind::Bounded;
    std::vector<double> ivals(grid.size(), 0.0);
    if (bounded) {
        rep.decomposition = decompose_asymptotic(f, alpha, grid, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i)
            ivals[i] = rep.decomposition->remainder_samples[i].second +
                       eval(rep.decomposition->periodic_part, grid[i]);
    } else {
        parallel_for(grid.size(), [&](std::size_t i) {
            ivals[i] = rl_integral(f, FracOrder::integral(alpha), grid[i], cfg);
        });
        rep.growth = growth_fit(f, alpha, grid, cfg);
    }
    if (!f.is_zero()) rep.nonperiodicity = nonperiodicity_certificate(f, alpha, cfg);

    rep.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        DiagnosticsReport::Row& row = rep.rows[i];
        row.t = grid[i];
        row.i_alpha_f = ivals[i];
        if (bounded) {
            row.phi = eval(rep.decomposition->periodic_part, grid[i]);
            row.remainder = rep.decomposition->remainder_samples[i].second;
        } else {
            row.phi = kNan;
            row.remainder = kNan;
        }
        row.defect = rep.defect.samples[i].second;
        row.bound = rep.defect.bound_samples[i].second;
    }
    return rep;
}

} // namespace

DiagnosticsReport run_diagnostics(const FourierSignal& f, double alpha,
                                  const QuadratureConfig& cfg,
                                  const std::string& spec_echo) {
    require_alpha_01(alpha, "run_diagnostics");
    return assemble(f, alpha, "rl-integral", cfg, spec_echo);
}

DiagnosticsReport derivative_diagnostics(const FourierSignal& f, double alpha,
                                         DerivativeKind kind, const QuadratureConfig& cfg,
                                         const std::string& spec_echo) {
    require_alpha_01(alpha, "derivative_diagnostics");
    const FourierSignal df = differentiate(f);
    const double beta = 1.0 - alpha; // pipeline runs on I^{1-alpha} f'
    DiagnosticsReport rep =
        assemble(df, beta, kind == DerivativeKind::Caputo ? "caputo" : "rl-derivative",
                 cfg, spec_echo);
    rep.alpha = alpha; // report the derivative order, not the pipeline order
    if (kind == DerivativeKind::RL)
        rep.rl_correction = {eval(f, 0.0) / gamma(1.0 - alpha), -alpha};
    return rep;
}

namespace {

nlohmann::ordered_json pairs_to_json(const std::vector<std::pair<double, double>>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [a, b] : v) arr.push_back({a, b});
    return arr;
}

} // namespace

std::string DiagnosticsReport::to_json_text() const {
    nlohmann::ordered_json j;
    try {
        j["signal"] = nlohmann::ordered_json::parse(signal_spec_json);
    } catch (const nlohmann::json::exception&) {
        j["signal"] = signal_spec_json;
    }
    j["alpha"] = alpha;
    j["operator"] = op;

    nlohmann::ordered_json v;
    switch (verdict.kind) {
        case BoundednessVerdict::Kind::Bounded: v["kind"] = "bounded"; break;
        case BoundednessVerdict::Kind::DivergesPlus: v["kind"] = "diverges+"; break;
        case BoundednessVerdict::Kind::DivergesMinus: v["kind"] = "diverges-"; break;
    }
    v["mean"] = verdict.mean;
    if (verdict.witness_bound)
        v["witness_bound"] = *verdict.witness_bound;
    else
        v["witness_bound"] = nullptr;
    j["verdict"] = v;

    nlohmann::ordered_json d;
    d["alpha"] = defect.alpha;
    d["period"] = defect.period;
    d["samples"] = pairs_to_json(defect.samples);
    d["bound"] = pairs_to_json(defect.bound_samples);
    j["defect"] = d;

    if (decomposition) {
        nlohmann::ordered_json dec;
        auto phi = nlohmann::ordered_json::array();
        for (const auto& h : decomposition->periodic_part.half_spectrum())
            phi.push_back({{"k", h.k}, {"re", h.c.real()}, {"im", h.c.imag()}});
        dec["periodic_part"] = {{"period", decomposition->periodic_part.period()},
                                {"harmonics", phi}};
        dec["remainder"] = pairs_to_json(decomposition->remainder_samples);
        dec["fit_constant"] = decomposition->fit_constant;
        dec["fit_exponent"] = decomposition->fit_exponent;
        j["decomposition"] = dec;
    } else {
        j["decomposition"] = nullptr;
    }

    if (nonperiodicity) {
        j["nonperiodicity"] = {{"t_star", nonperiodicity->t_star},
                               {"delta", nonperiodicity->delta}};
    } else {
        j["nonperiodicity"] = nullptr;
    }

    if (growth) {
        j["growth"] = {{"exponent", growth->exponent}, {"constant", growth->constant}};
    } else {
        j["growth"] = nullptr;
    }

    if (rl_correction) {
        j["rl_correction"] = {{"coefficient", rl_correction->first},
                              {"exponent", rl_correction->second}};
    } else {
        j["rl_correction"] = nullptr;
    }

    nlohmann::ordered_json q;
    q["rel_tol"] = config.rel_tol;
    q["abs_tol"] = config.abs_tol;
    q["panels_per_period"] = config.panels_per_period;
    if (config.grading_exponent)
        q["grading_exponent"] = *config.grading_exponent;
    else
        q["grading_exponent"] = nullptr;
    q["max_refine_levels"] = config.max_refine_levels;
    j["quadrature"] = q;

    return j.dump(2);
}

void DiagnosticsReport::to_csv(std::ostream& out) const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "# alpha=%.17g op=%s rel_tol=%.17g abs_tol=%.17g panels=%d\n", alpha,
                  op.c_str(), config.rel_tol, config.abs_tol, config.panels_per_period);
    out << buf;
    out << "t,I_alpha_f,phi,remainder,defect,bound\n";
    for (const Row& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                      r.i_alpha_f, r.phi, r.remainder, r.defect, r.bound);
        out << buf;
    }
}

} // namespace fracperiod
