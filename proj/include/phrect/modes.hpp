// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "phrect/basis.hpp"

namespace phrect {

/// Seam-matching amplitudes of one mode: alpha_n(t) = a cos(lambda t) +
/// b sin(lambda t) + Duhamel term for t > 0, beta_n(t) = c e^{lambda^2 t} +
/// Duhamel term for t < 0. Matching u, u_t and u_tt across t = 0 forces
/// a = c and the closed forms below.
struct ModeCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// a = c = ((1 - lambda^2) f_n(0) - f_n'(0)) / (lambda^2 (lambda^2 + 1)),
/// b = (2 f_n(0) - f_n'(0)) / (lambda (lambda^2 + 1)).
ModeCoefficients mode_coefficients(double f_n0, double fp_n0, double lambda);

/// (1/lambda) integral_0^t f_n(tau) sin(lambda (t - tau)) dtau.
/// Analytic for polynomial/trig/exponential temporal parts, quadrature for
/// sampled ones.
double duhamel_hyp(const ModeCoefficientSamples& s, double lambda, double t, double tol);

/// - integral_t^0 f_n(tau) e^{lambda^2 (t - tau)} dtau for t in [-T, 0].
/// The exponent is nonpositive throughout, so the stiff regime cannot
/// overflow.
double duhamel_par(const ModeCoefficientSamples& s, double lambda, double t, double tol);

/// Convolution kernels over the order-th derivative of f_n (the building
/// blocks of the derivative amplitudes):
///   convolve_sin: integral_0^t f_n^(k) sin(lambda (t - tau)) dtau
///   convolve_cos: integral_0^t f_n^(k) cos(lambda (t - tau)) dtau
///   convolve_exp: integral_t^0 f_n^(k) e^{lambda^2 (t - tau)} dtau
double convolve_sin(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol);
double convolve_cos(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol);
double convolve_exp(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol);

struct ModeSolution {
    Eigenpair pair;
    ModeCoefficients coeffs;
    ModeCoefficientSamples samples;
    double tol = 1e-10;
};

ModeSolution make_mode_solution(const Forcing& f, const Eigenpair& pair, const RectDomain& dom,
                                double tol);

double alpha(const ModeSolution& m, double t);  // t in [0, T]
double beta(const ModeSolution& m, double t);   // t in [-T, 0]

// Derivative amplitudes in integrated-by-parts expanded form: the prefactors
// are closed functions of f_n(0), f_n'(0) and the integrands are f_n, f_n'
// or f_n''. The second-derivative forms need f_n''.
double alpha_dt(const ModeSolution& m, double t);
double beta_dt(const ModeSolution& m, double t);
double alpha_dtt(const ModeSolution& m, double t);
double beta_dtt(const ModeSolution& m, double t);
bool has_second_derivative_data(const ModeSolution& m);

// Direct-differentiation route: alpha' from term-by-term differentiation of
// the stored representation, second derivatives through the mode ODEs
// (alpha'' = f_n - lambda^2 alpha, beta' = lambda^2 beta + f_n). Used as the
// independent side of the derivative-algebra equivalence checks.
double alpha_dt_direct(const ModeSolution& m, double t);
double alpha_dtt_ode(const ModeSolution& m, double t);
double beta_dt_ode(const ModeSolution& m, double t);
double beta_dtt_ode(const ModeSolution& m, double t);

// Mode amplitude of u_xx: -lambda^2 times the mode amplitude of u. The
// `expanded` variants evaluate the integrated-by-parts forms instead and
// exist to cross-check that algebra.
double uxx_mode_hyp(const ModeSolution& m, double t);
double uxx_mode_par(const ModeSolution& m, double t);
double uxx_hyp_expanded(const ModeSolution& m, double t);  // needs f_n''
double uxx_par_expanded(const ModeSolution& m, double t);

// Known-bad expanded variants, each carrying one seeded algebra fault
// (a dropped lambda factor in a sin prefactor, a lambda^2 -> lambda swap in
// a numerator, a lambda^2 t -> lambda t swap in an exponent). The
// equivalence checks must reject these measurably; they guard the checks'
// sensitivity.
double alpha_dt_misprint(const ModeSolution& m, double t);
double uxx_hyp_expanded_misprint(const ModeSolution& m, double t);
double beta_dtt_misprint(const ModeSolution& m, double t);

/// One-sided seam mismatches |alpha(0)-beta(0)|, |alpha'(0)-beta'(0)| and,
/// when f_n'' exists, |alpha''(0)-beta''(0)|.
struct ModeConjugationCheck {
    double jump_value = 0.0;
    double jump_dt = 0.0;
    std::optional<double> jump_dtt;
};

ModeConjugationCheck check_mode_conjugation(const ModeSolution& m);

}  // namespace phrect
