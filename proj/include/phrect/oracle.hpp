// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "phrect/series.hpp"

namespace phrect {

/// The seam-matching conditions as a linear system in (a, b, c), assembled
/// from the general mode solutions and the three matching conditions at
/// t = 0 — never from the closed-form coefficient expressions, so solving it
/// is an independent derivation path.
///   row 1:  a - c = 0
///   row 2:  lambda b - lambda^2 c = f_n(0)
///   row 3:  -lambda^2 a - lambda^4 c = lambda^2 f_n(0) + f_n'(0) - f_n(0)
struct ConjugationSystem {
    std::array<std::array<double, 3>, 3> matrix{};
    std::array<double, 3> rhs{};

    static ConjugationSystem assemble(double f_n0, double fp_n0, double lambda);
    double determinant() const;
};

/// Solves the 3x3 system by Gaussian elimination with partial pivoting.
std::array<double, 3> conjugation_solve(double f_n0, double fp_n0, double lambda);

/// Classical RK4 for alpha'' + lambda^2 alpha = f_n(t) with alpha(0) = a,
/// alpha'(0) = lambda b, on a uniform ascending grid over [0, T].
/// Requires step <= 0.05/lambda.
std::vector<double> integrate_mode_hyp(const ModeCoefficientSamples& s, double lambda, double a,
                                       double b, const std::vector<double>& t_grid);

/// Exact-exponential (integrating factor) stepper for beta' = lambda^2 beta
/// + f_n(t) with beta(0) = c, marched backward on a uniform descending grid
/// from 0 to -T. A forward march is refused: the growing factor e^{lambda^2 t}
/// makes it unstable.
std::vector<double> integrate_mode_par(const ModeCoefficientSamples& s, double lambda, double c,
                                       const std::vector<double>& t_grid);

/// Equation-level cross-check: re-propagates both regions from the spectral
/// seam data with finite differences (leapfrog on the wave side, Crank-
/// Nicolson on the substituted forward-heat side) and reports the deviation
/// from the spectral fields.
struct FdResult {
    int nx = 0;
    int nt = 0;
    std::vector<double> hyp;  // nx * nt, x-major, t = 0..T
    std::vector<double> par;  // nx * nt, x-major, t = 0..-T
    double max_dev_hyp = 0.0;
    double max_dev_par = 0.0;
    /// deviation per time level (max over x), for growth diagnostics
    std::vector<double> dev_hyp_by_level;
    std::vector<double> dev_par_by_level;
};

FdResult fd_propagate(const SpectralSolution& sol, const Forcing& f, int nx, int nt,
                      double ut_seed_scale = 1.0);

/// High-precision reference projection: ten times the panel density at
/// tolerance 1e-13. Provenance oracle for projection expectations.
double quad_reference(const Forcing& f, int n, double t, const RectDomain& dom);

}  // namespace phrect
