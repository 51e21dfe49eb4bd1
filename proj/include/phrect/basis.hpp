// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "phrect/domain.hpp"
#include "phrect/quadrature.hpp"

namespace phrect {

/// One Dirichlet sine mode of (0, p): X_n(x) = sqrt(2/p) sin(lambda_n x),
/// lambda_n = n pi / p.
struct Eigenpair {
    int n = 1;
    double lambda = 0.0;
    double p = 0.0;
};

Eigenpair eigenpair(int n, const RectDomain& dom);
double eval_Xn(const Eigenpair& pair, double x);

/// integral_0^p S(x) X_n(x) dx with absolute error <= tol.
/// Exact (no quadrature) when S is itself a sine mode.
double spatial_coefficient(const SpatialProfile& s, const Eigenpair& pair, const RectDomain& dom,
                           double tol);

/// f_n(t) = integral_0^p f(x,t) X_n(x) dx with absolute error <= tol.
double project(const Forcing& f, const Eigenpair& pair, double t, const RectDomain& dom,
               double tol);

/// Projection of the order-th time derivative of f.
double project_dt(const Forcing& f, const Eigenpair& pair, double t, int order,
                  const RectDomain& dom, double tol);

/// Separable per-mode view of the forcing: f_n(t) = sum_j s_j g_j(t), where
/// s_j is the fixed spatial projection of term j onto mode n. Derivatives of
/// f_n reduce to derivatives of the temporal profiles.
struct ModeCoefficientSamples {
    int n = 0;
    double lambda = 0.0;
    RectDomain dom{1.0, 1.0};
    double f_n0 = 0.0;   // f_n(0)
    double fp_n0 = 0.0;  // f_n'(0)
    std::vector<std::pair<double, TemporalProfile>> parts;

    double value(double t) const;
    double deriv(double t, int order) const;
    bool supports_order(int order) const;

    /// Upper bound on sup |f_n^(order)| over [lo, hi] from per-part analytic
    /// envelopes (not a sampled estimate).
    double sup_bound(int order, double lo, double hi) const;
};

ModeCoefficientSamples make_mode_samples(const Forcing& f, const Eigenpair& pair,
                                         const RectDomain& dom, double tol);

/// L2 norm of f_n^(order) over [a, b], by quadrature.
double mode_l2_norm(const ModeCoefficientSamples& s, int order, double a, double b, double tol);

/// Least-squares power law |v_n| ~ amplitude * n^rate.
struct DecayFit {
    double amplitude = 0.0;
    double rate = 0.0;
    int n_used = 0;
};

/// Fit over the pairs (ns[i], magnitudes[i]); entries with magnitude below
/// 1e-13 of the largest are dropped as noise. Throws InsufficientDataError
/// with fewer than four surviving points.
DecayFit fit_power_law(const std::vector<int>& ns, const std::vector<double>& magnitudes);

/// Decay rate of the projection coefficients f_n(t) over n = 1..n_max.
DecayFit decay_estimate(const Forcing& f, const RectDomain& dom, int n_max, double t,
                        double tol = 1e-12);

}  // namespace phrect
