// SPDX-License-Identifier: Apache-2.0
#include "phrect/domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace phrect {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double lerp_uniform(const std::vector<double>& values, double lo, double hi, double t) {
    const std::size_t m = values.size();
    if (m < 2) return m == 1 ? values[0] : 0.0;
    const double u = (t - lo) / (hi - lo) * static_cast<double>(m - 1);
    auto i = static_cast<std::ptrdiff_t>(std::floor(u));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(m) - 2);
    const double theta = u - static_cast<double>(i);
    return (1.0 - theta) * values[i] + theta * values[i + 1];
}

}  // namespace

RectDomain::RectDomain(double width, double time_extent) : p(width), t_max(time_extent) {
    if (!(p > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("RectDomain: requires p > 0 and T > 0");
}

bool RectDomain::contains(double x, double t) const {
    const double sx = 4.0 * kEps * p;
    const double st = 4.0 * kEps * t_max;
    return x >= -sx && x <= p + sx && t >= -t_max - st && t <= t_max + st;
}

void RectDomain::require_inside(double x, double t) const {
    if (!contains(x, t))
        throw DomainError("coordinate (" + std::to_string(x) + ", " + std::to_string(t) +
                          ") outside the closed rectangle");
}

double eval_spatial(const SpatialProfile& s, double x, const RectDomain& dom) {
    return std::visit(
        [&](const auto& prof) -> double {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, SineMode>) {
                const double lambda = prof.k * std::numbers::pi / dom.p;
                return std::sqrt(2.0 / dom.p) * std::sin(lambda * x);
            } else if constexpr (std::is_same_v<P, PolyBubble>) {
                return prof.amplitude * x * (dom.p - x);
            } else {
                return lerp_uniform(prof.values, 0.0, dom.p, x);
            }
        },
        s);
}

double eval_temporal(const TemporalProfile& g, double t, const RectDomain& dom) {
    return std::visit(
        [&](const auto& prof) -> double {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                double acc = 0.0;
                for (auto it = prof.coeffs.rbegin(); it != prof.coeffs.rend(); ++it)
                    acc = acc * t + *it;
                return acc;
            } else if constexpr (std::is_same_v<P, Trig>) {
                return prof.amplitude * std::sin(prof.omega * t + prof.phase);
            } else if constexpr (std::is_same_v<P, Exponential>) {
                return prof.amplitude * std::exp(prof.rate * t);
            } else {
                return lerp_uniform(prof.values, -dom.t_max, dom.t_max, t);
            }
        },
        g);
}

bool temporal_supports_order(const TemporalProfile& g, int order) {
    if (order < 0 || order > 2) return false;
    if (std::holds_alternative<SampledSignal>(g)) return order <= 1;
    return true;
}

std::optional<TemporalProfile> temporal_derivative(const TemporalProfile& g) {
    return std::visit(
        [](const auto& prof) -> std::optional<TemporalProfile> {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                PolynomialInT d;
                for (std::size_t k = 1; k < prof.coeffs.size(); ++k)
                    d.coeffs.push_back(static_cast<double>(k) * prof.coeffs[k]);
                return TemporalProfile{d};
            } else if constexpr (std::is_same_v<P, Trig>) {
                return TemporalProfile{Trig{prof.amplitude * prof.omega, prof.omega,
                                            prof.phase + std::numbers::pi / 2.0}};
            } else if constexpr (std::is_same_v<P, Exponential>) {
                return TemporalProfile{Exponential{prof.amplitude * prof.rate, prof.rate}};
            } else {
                return std::nullopt;
            }
        },
        g);
}

double eval_temporal_dt(const TemporalProfile& g, double t, int order, const RectDomain& dom) {
    if (order == 0) return eval_temporal(g, t, dom);
    if (order < 0 || order > 2)
        throw UnsupportedDerivativeError("temporal derivative order must be 0..2");

    if (const auto* sig = std::get_if<SampledSignal>(&g)) {
        if (order == 2)
            throw UnsupportedDerivativeError(
                "second time derivative is unsupported for sampled signals");
        const double T = dom.t_max;
        const double h = std::cbrt(kEps) * std::max(1.0, std::abs(t));
        auto val = [&](double tau) { return lerp_uniform(sig->values, -T, T, tau); };
        if (t + h > T) return (val(t) - val(t - h)) / h;
        if (t - h < -T) return (val(t + h) - val(t)) / h;
        return (val(t + h) - val(t - h)) / (2.0 * h);
    }

    TemporalProfile d = *temporal_derivative(g);
    if (order == 2) d = *temporal_derivative(d);
    return eval_temporal(d, t, dom);
}

double eval_f(const Forcing& f, double x, double t, const RectDomain& dom) {
    dom.require_inside(x, t);
    double acc = 0.0;
    for (const auto& term : f.terms)
        acc += eval_spatial(term.spatial, x, dom) * eval_temporal(term.temporal, t, dom);
    return acc;
}

double eval_f_dt(const Forcing& f, double x, double t, int order, const RectDomain& dom) {
    dom.require_inside(x, t);
    double acc = 0.0;
    for (const auto& term : f.terms)
        acc += eval_spatial(term.spatial, x, dom) * eval_temporal_dt(term.temporal, t, order, dom);
    return acc;
}

std::vector<CompatViolation> validate_compat(const Forcing& f, const RectDomain& dom) {
    std::vector<CompatViolation> out;
    auto add = [&](std::string code, std::string msg) {
        out.push_back({std::move(code), std::move(msg)});
    };

    if (f.smoothness_alpha && !(*f.smoothness_alpha > 0.0 && *f.smoothness_alpha < 1.0))
        add("ALPHA_OUT_OF_RANGE", "smoothness_alpha must lie in (0,1)");

    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        const auto& term = f.terms[i];
        const std::string where = "term " + std::to_string(i);

        if (const auto* sp = std::get_if<SampledProfile>(&term.spatial)) {
            if (sp->values.size() < 2) {
                add("SAMPLE_TOO_SHORT", where + ": spatial sample grid needs >= 2 points");
                continue;
            }
            for (double v : sp->values)
                if (!std::isfinite(v)) {
                    add("NON_FINITE", where + ": spatial samples contain a non-finite value");
                    break;
                }
            if (std::abs(sp->values.front()) > 1e-12 || std::abs(sp->values.back()) > 1e-12)
                add("BOUNDARY_NONZERO",
                    where + ": spatial profile must vanish at x = 0 and x = p");
        } else {
            // SineMode and PolyBubble vanish at the walls structurally; verify
            // to tolerance anyway so the check covers every catalog entry.
            const double v0 = eval_spatial(term.spatial, 0.0, dom);
            const double vp = eval_spatial(term.spatial, dom.p, dom);
            if (std::abs(v0) > 1e-12 || std::abs(vp) > 1e-12)
                add("BOUNDARY_NONZERO",
                    where + ": spatial profile must vanish at x = 0 and x = p");
        }

        if (const auto* sig = std::get_if<SampledSignal>(&term.temporal)) {
            if (sig->values.size() < 2) {
                add("SAMPLE_TOO_SHORT", where + ": temporal sample grid needs >= 2 points");
                continue;
            }
            for (double v : sig->values)
                if (!std::isfinite(v)) {
                    add("NON_FINITE", where + ": temporal samples contain a non-finite value");
                    break;
                }
            // continuity across the seam, where the equation changes type
            const double eps_t = 1e-12 * dom.t_max;
            const double jump = std::abs(eval_temporal(term.temporal, eps_t, dom) -
                                         eval_temporal(term.temporal, -eps_t, dom));
            if (jump > 1e-9)
                add("SEAM_DISCONTINUITY", where + ": temporal signal jumps across t = 0");
        }
    }
    return out;
}

}  // namespace phrect
