// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phrect/oracle.hpp"
#include "phrect/series.hpp"

namespace phrect {

struct ResidualNorms {
    double linf_hyp = 0.0;
    double l2_hyp = 0.0;
    double linf_par = 0.0;
    double l2_par = 0.0;
};

/// Equation residuals u_tt - u_xx - f (hyperbolic side) and u_t + u_xx - f
/// (parabolic side) along two routes: the series' own derivative fields, and
/// centered finite-difference stencils applied to tabulated u alone. The
/// second route is independent of the derivative-series algebra.
struct ResidualReport {
    ResidualNorms spectral;
    ResidualNorms stencil;
    int nx = 0;
    int nt = 0;
    bool utt_via_ode = false;  // hyperbolic u_tt used the ODE identity (f_n'' unavailable)
};

ResidualReport residual_pde(const SpectralSolution& sol, const Forcing& f, int nx, int nt);

/// Seam jumps of u, u_t, u_tt from one-sided series values, plus one-sided
/// finite-difference jump estimates at +-probe_offset. The FD route
/// differentiates the stored amplitudes themselves, so it catches coefficient
/// corruption the closed prefactor forms cannot see.
struct ConjugationReport {
    double jump_u = 0.0;
    double jump_ut = 0.0;
    std::optional<double> jump_utt;
    double fd_jump_u = 0.0;
    double fd_jump_ut = 0.0;
    double probe_offset = 0.0;
    int n_x_samples = 0;
    double ut_scale = 0.0;  // magnitude reference for the FD gates
};

ConjugationReport check_conjugation(const SpectralSolution& sol, int n_x_samples,
                                    double probe_offset);

/// Homogeneous-problem zeros plus a projection round-trip: mode amplitudes
/// recovered by x-quadrature from the evaluated fields must match the stored
/// ones, satisfy the projected mode ODEs, and vanish beyond the truncation.
struct UniquenessReport {
    bool homogeneous_zero = false;
    double homogeneous_max_coeff = 0.0;
    double homogeneous_max_field = 0.0;
    double max_roundtrip_err = 0.0;
    double max_extra_mode_amp = 0.0;
    std::optional<double> max_ode_residual_hyp;  // absent when u_tt unavailable
    double max_ode_residual_par = 0.0;
};

UniquenessReport uniqueness_probe(const RectDomain& dom, const TruncationPolicy& policy,
                                  const SpectralSolution& probe, double tol);

/// One integral-bound trial: |convolution| <= constant * L2 norm, with the
/// Cauchy-Schwarz constants 1/(sqrt(2) lambda) (exponential kernel) and
/// sqrt(T)/lambda (oscillatory kernel).
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

std::vector<BoundCheck> lemma2_bound_check(const ModeCoefficientSamples& s, double lambda,
                                           const RectDomain& dom, int trials, std::uint64_t seed);

/// Tabulates cos(lambda_n T) + lambda_n sin(lambda_n T) for n = 1..n_max.
/// Purely diagnostic: shows how close the alternative formulation with a
/// Dirichlet condition at t = T would come to degeneracy; the three seam
/// conditions used here remove that dependence on p and T entirely.
struct DegeneracyScan {
    double p = 0.0;
    double T = 0.0;
    int n_max = 0;
    std::vector<double> values;
    double min_abs = 0.0;
    int argmin_n = 0;
};

DegeneracyScan degeneracy_scan(double p, double T, int n_max);

struct ConvergenceRow {
    int n = 0;
    double err_u = 0.0;
    double err_ut = 0.0;
    double err_utt = 0.0;  // 0 when unavailable
    double err_uxx = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    std::optional<double> slope_u, slope_ut, slope_utt, slope_uxx;  // log-log error slopes
    std::optional<DecayFit> coefficient_fit;
    int reference_n = 0;
    bool utt_included = false;
};

ConvergenceStudy convergence_study(const Forcing& f, const RectDomain& dom,
                                   const std::vector<int>& n_list, int reference_n, int nx,
                                   int nt, double tol);

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int nx = 101;
    int nt = 101;
    int conj_samples = 33;
    double probe_offset = 1e-6;
    int lemma2_trials = 100;
    std::uint64_t seed = 0;
    double tol_residual = 1e-7;
    double tol_jump = 1e-9;
    double tol_boundary = 1e-15;
    int scan_n_max = 50;
    double inject_coefficient_error = 0.0;  // perturbs b_1 post-solve (detector regression)
};

struct VerificationReport {
    ResidualReport residual;
    double boundary_max_x0 = 0.0;
    double boundary_max_xp = 0.0;
    ConjugationReport conjugation;
    std::vector<BoundCheck> bounds;
    UniquenessReport uniqueness;
    DegeneracyScan degeneracy;
    std::optional<DecayFit> decay;
    VerifyOptions options;
    std::vector<CheckOutcome> checks;
    bool pass = false;
};

VerificationReport run_verification(const SpectralSolution& sol, const VerifyOptions& opts);

}  // namespace phrect
