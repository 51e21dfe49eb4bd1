// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phrect/errors.hpp"

namespace phrect {

/// Rectangle (0,p) x (-T,T). The equation is hyperbolic (u_tt - u_xx = f) for
/// t > 0 and parabolic (u_t + u_xx = f) for t < 0; the type changes across the
/// seam t = 0.
struct RectDomain {
    double p;
    double t_max;

    RectDomain(double width, double time_extent);
    double t_min() const { return -t_max; }
    bool contains(double x, double t) const;
    void require_inside(double x, double t) const;  // throws DomainError
};

// --- forcing catalog ---------------------------------------------------
//
// f(x,t) is a sum of separable terms, each a spatial profile times a temporal
// profile. Every spatial profile vanishes at x = 0 and x = p.

/// Normalized eigenfunction sqrt(2/p) sin(k pi x / p).
struct SineMode {
    int k = 1;
};

/// amplitude * x * (p - x)
struct PolyBubble {
    double amplitude = 1.0;
};

/// Piecewise-linear values on a uniform x-grid over [0, p]; endpoint samples
/// must be zero.
struct SampledProfile {
    std::vector<double> values;
};

using SpatialProfile = std::variant<SineMode, PolyBubble, SampledProfile>;

/// sum_k coeffs[k] * t^k
struct PolynomialInT {
    std::vector<double> coeffs;
};

/// amplitude * sin(omega t + phase)
struct Trig {
    double amplitude = 1.0;
    double omega = 1.0;
    double phase = 0.0;
};

/// amplitude * e^{rate t}
struct Exponential {
    double amplitude = 1.0;
    double rate = 0.0;
};

/// Piecewise-linear values on a uniform t-grid over [-T, T]. Supports one
/// time derivative (finite differences); second derivatives are unsupported.
struct SampledSignal {
    std::vector<double> values;
};

using TemporalProfile = std::variant<PolynomialInT, Trig, Exponential, SampledSignal>;

struct ForcingTerm {
    SpatialProfile spatial;
    TemporalProfile temporal;
};

struct Forcing {
    std::vector<ForcingTerm> terms;  // empty list is the zero forcing
    std::optional<double> smoothness_alpha;  // Holder exponent of df/dx, in (0,1)

    static Forcing zero() { return {}; }
};

double eval_spatial(const SpatialProfile& s, double x, const RectDomain& dom);
double eval_temporal(const TemporalProfile& g, double t, const RectDomain& dom);

/// order-th time derivative of a temporal profile; analytic for
/// polynomial/trig/exponential, centered finite differences (step
/// cbrt(eps)*max(1,|t|), one-sided at t = +-T) for sampled signals.
double eval_temporal_dt(const TemporalProfile& g, double t, int order, const RectDomain& dom);

/// Whether the profile supports the requested derivative order (0..2).
bool temporal_supports_order(const TemporalProfile& g, int order);

/// Analytic derivative profile, staying inside the catalog; nullopt for
/// sampled signals.
std::optional<TemporalProfile> temporal_derivative(const TemporalProfile& g);

double eval_f(const Forcing& f, double x, double t, const RectDomain& dom);
double eval_f_dt(const Forcing& f, double x, double t, int order, const RectDomain& dom);

struct CompatViolation {
    std::string code;
    std::string message;
};

/// Hypothesis checks for the series construction: spatial profiles vanish at
/// both walls, sample grids are usable, claimed smoothness is in range. Empty
/// result means compatible. Reports, never throws.
std::vector<CompatViolation> validate_compat(const Forcing& f, const RectDomain& dom);

}  // namespace phrect
