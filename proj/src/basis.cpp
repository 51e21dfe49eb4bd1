// SPDX-License-Identifier: Apache-2.0
#include "phrect/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phrect {

namespace {

std::vector<double> sample_breakpoints(const SpatialProfile& s, const RectDomain& dom) {
    std::vector<double> bps;
    if (const auto* sp = std::get_if<SampledProfile>(&s)) {
        const std::size_t m = sp->values.size();
        for (std::size_t i = 1; i + 1 < m; ++i)
            bps.push_back(dom.p * static_cast<double>(i) / static_cast<double>(m - 1));
    }
    return bps;
}

/// Magnitude envelope of a temporal profile over [-T, T]; used to split an
/// absolute tolerance across separable factors.
double temporal_scale(const TemporalProfile& g, const RectDomain& dom) {
    return std::visit(
        [&](const auto& prof) -> double {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                double acc = 0.0;
                double tp = 1.0;
                for (double c : prof.coeffs) {
                    acc += std::abs(c) * tp;
                    tp *= dom.t_max;
                }
                return acc;
            } else if constexpr (std::is_same_v<P, Trig>) {
                return std::abs(prof.amplitude);
            } else if constexpr (std::is_same_v<P, Exponential>) {
                return std::abs(prof.amplitude) * std::exp(std::abs(prof.rate) * dom.t_max);
            } else {
                double m = 0.0;
                for (double v : prof.values) m = std::max(m, std::abs(v));
                return m;
            }
        },
        g);
}

}  // namespace

Eigenpair eigenpair(int n, const RectDomain& dom) {
    if (n < 1) throw InvalidModeError("mode index must be >= 1");
    return {n, static_cast<double>(n) * std::numbers::pi / dom.p, dom.p};
}

double eval_Xn(const Eigenpair& pair, double x) {
    return std::sqrt(2.0 / pair.p) * std::sin(pair.lambda * x);
}

double spatial_coefficient(const SpatialProfile& s, const Eigenpair& pair, const RectDomain& dom,
                           double tol) {
    if (const auto* sine = std::get_if<SineMode>(&s)) {
        return sine->k == pair.n ? 1.0 : 0.0;  // orthonormality
    }
    const auto bps = sample_breakpoints(s, dom);
    const int min_panels = panels_for_frequency(pair.lambda, dom.p);
    const auto res = integrate_adaptive(
        [&](double x) { return eval_spatial(s, x, dom) * eval_Xn(pair, x); }, 0.0, dom.p, tol,
        min_panels, bps);
    return res.value;
}

namespace {

double project_impl(const Forcing& f, const Eigenpair& pair, double t, int order,
                    const RectDomain& dom, double tol) {
    int numeric_terms = 0;
    for (const auto& term : f.terms)
        if (!std::holds_alternative<SineMode>(term.spatial)) ++numeric_terms;

    double acc = 0.0;
    for (const auto& term : f.terms) {
        const double g = eval_temporal_dt(term.temporal, t, order, dom);
        if (const auto* sine = std::get_if<SineMode>(&term.spatial)) {
            if (sine->k == pair.n) acc += g;
            continue;
        }
        if (g == 0.0) continue;
        const double term_tol = tol / std::max(1, numeric_terms) / std::max(1.0, std::abs(g));
        acc += spatial_coefficient(term.spatial, pair, dom, term_tol) * g;
    }
    return acc;
}

}  // namespace

double project(const Forcing& f, const Eigenpair& pair, double t, const RectDomain& dom,
               double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("project: tol must be > 0");
    dom.require_inside(0.0, t);
    return project_impl(f, pair, t, 0, dom, tol);
}

double project_dt(const Forcing& f, const Eigenpair& pair, double t, int order,
                  const RectDomain& dom, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("project_dt: tol must be > 0");
    dom.require_inside(0.0, t);
    return project_impl(f, pair, t, order, dom, tol);
}

double ModeCoefficientSamples::value(double t) const {
    double acc = 0.0;
    for (const auto& [s, g] : parts) acc += s * eval_temporal(g, t, dom);
    return acc;
}

double ModeCoefficientSamples::deriv(double t, int order) const {
    if (order == 0) return value(t);
    double acc = 0.0;
    for (const auto& [s, g] : parts) acc += s * eval_temporal_dt(g, t, order, dom);
    return acc;
}

bool ModeCoefficientSamples::supports_order(int order) const {
    if (order < 0 || order > 2) return false;
    for (const auto& [s, g] : parts)
        if (!temporal_supports_order(g, order)) return false;
    return true;
}

double ModeCoefficientSamples::sup_bound(int order, double lo, double hi) const {
    const double m = std::max(std::abs(lo), std::abs(hi));
    double acc = 0.0;
    for (const auto& [s, g] : parts) {
        const double env = std::visit(
            [&](const auto& prof) -> double {
                using P = std::decay_t<decltype(prof)>;
                if constexpr (std::is_same_v<P, PolynomialInT>) {
                    std::vector<double> c = prof.coeffs;
                    for (int d = 0; d < order; ++d) {
                        std::vector<double> nc;
                        for (std::size_t k = 1; k < c.size(); ++k)
                            nc.push_back(static_cast<double>(k) * c[k]);
                        c = std::move(nc);
                    }
                    double acc2 = 0.0;
                    double tp = 1.0;
                    for (double ck : c) {
                        acc2 += std::abs(ck) * tp;
                        tp *= m;
                    }
                    return acc2;
                } else if constexpr (std::is_same_v<P, Trig>) {
                    return std::abs(prof.amplitude) * std::pow(prof.omega, order);
                } else if constexpr (std::is_same_v<P, Exponential>) {
                    return std::abs(prof.amplitude) * std::pow(std::abs(prof.rate), order) *
                           std::exp(std::max(prof.rate * lo, prof.rate * hi));
                } else {
                    if (order >= 2)
                        throw UnsupportedDerivativeError(
                            "second time derivative is unsupported for sampled signals");
                    const std::size_t k = prof.values.size();
                    if (k < 2) return 0.0;
                    double mx = 0.0;
                    if (order == 0) {
                        for (double v : prof.values) mx = std::max(mx, std::abs(v));
                    } else {
                        const double h = 2.0 * dom.t_max / static_cast<double>(k - 1);
                        for (std::size_t i = 0; i + 1 < k; ++i)
                            mx = std::max(mx, std::abs(prof.values[i + 1] - prof.values[i]) / h);
                    }
                    return mx;
                }
            },
            g);
        acc += std::abs(s) * env;
    }
    return acc;
}

ModeCoefficientSamples make_mode_samples(const Forcing& f, const Eigenpair& pair,
                                         const RectDomain& dom, double tol) {
    ModeCoefficientSamples out;
    out.n = pair.n;
    out.lambda = pair.lambda;
    out.dom = dom;

    int numeric_terms = 0;
    for (const auto& term : f.terms)
        if (!std::holds_alternative<SineMode>(term.spatial)) ++numeric_terms;

    for (const auto& term : f.terms) {
        double s;
        if (const auto* sine = std::get_if<SineMode>(&term.spatial)) {
            s = (sine->k == pair.n) ? 1.0 : 0.0;
        } else {
            const double scale = std::max(1.0, temporal_scale(term.temporal, dom));
            s = spatial_coefficient(term.spatial, pair, dom,
                                    tol / std::max(1, numeric_terms) / scale);
        }
        if (s != 0.0) out.parts.emplace_back(s, term.temporal);
    }
    out.f_n0 = out.value(0.0);
    out.fp_n0 = out.deriv(0.0, 1);
    return out;
}

double mode_l2_norm(const ModeCoefficientSamples& s, int order, double a, double b, double tol) {
    if (a == b) return 0.0;
    if (!s.supports_order(order))
        throw UnsupportedDerivativeError("mode_l2_norm: derivative order unavailable");
    double omega_max = 0.0;
    std::vector<double> bps;
    for (const auto& [c, g] : s.parts) {
        if (const auto* tr = std::get_if<Trig>(&g)) omega_max = std::max(omega_max, tr->omega);
        if (const auto* sig = std::get_if<SampledSignal>(&g)) {
            const std::size_t m = sig->values.size();
            for (std::size_t i = 1; i + 1 < m; ++i)
                bps.push_back(-s.dom.t_max +
                              2.0 * s.dom.t_max * static_cast<double>(i) /
                                  static_cast<double>(m - 1));
        }
    }
    // squaring doubles the top frequency
    const int min_panels = panels_for_frequency(2.0 * omega_max, b - a);
    const auto res = integrate_adaptive(
        [&](double t) {
            const double v = s.deriv(t, order);
            return v * v;
        },
        a, b, tol * tol, min_panels, bps);
    return std::sqrt(std::max(0.0, res.value));
}

DecayFit fit_power_law(const std::vector<int>& ns, const std::vector<double>& magnitudes) {
    double max_mag = 0.0;
    for (double m : magnitudes) max_mag = std::max(max_mag, std::abs(m));
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (std::abs(magnitudes[i]) > 1e-13 * max_mag && magnitudes[i] != 0.0) {
            lx.push_back(std::log(static_cast<double>(ns[i])));
            ly.push_back(std::log(std::abs(magnitudes[i])));
        }
    }
    const std::size_t m = lx.size();
    if (m < 4)
        throw InsufficientDataError("fewer than four nonzero coefficients for a decay fit");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;
    return {std::exp(intercept), slope, static_cast<int>(m)};
}

DecayFit decay_estimate(const Forcing& f, const RectDomain& dom, int n_max, double t,
                        double tol) {
    if (n_max < 8) throw std::invalid_argument("decay_estimate: n_max must be >= 8");
    std::vector<int> ns;
    std::vector<double> mags;
    for (int n = 1; n <= n_max; ++n) {
        ns.push_back(n);
        mags.push_back(project(f, eigenpair(n, dom), t, dom, tol));
    }
    return fit_power_law(ns, mags);
}

}  // namespace phrect
