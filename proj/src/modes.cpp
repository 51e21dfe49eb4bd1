// SPDX-License-Identifier: Apache-2.0
#include "phrect/modes.hpp"

#include <cmath>
#include <numbers>

namespace phrect {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// integral_0^t cos(a tau + b) dtau, stable as a -> 0
double int_cos(double a, double b, double t) {
    const double h = 0.5 * a * t;
    return t * std::cos(b + h) * sinc(h);
}

// integral_0^t sin(a tau + b) dtau
double int_sin(double a, double b, double t) {
    const double h = 0.5 * a * t;
    return t * std::sin(b + h) * sinc(h);
}

// S_k = integral_0^t tau^k sin(lambda (t - tau)) dtau and the cos analogue,
// by the two-term recurrence S_k = t^k/lambda - (k/lambda) C_{k-1},
// C_k = (k/lambda) S_{k-1}.
void poly_kernels(double lambda, double t, std::size_t kmax, std::vector<double>& S,
                  std::vector<double>& C) {
    S.assign(kmax + 1, 0.0);
    C.assign(kmax + 1, 0.0);
    const double half = 0.5 * lambda * t;
    const double s2 = std::sin(half);
    S[0] = 2.0 * s2 * s2 / lambda;  // (1 - cos(lambda t)) / lambda
    C[0] = std::sin(lambda * t) / lambda;
    double tk = 1.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        tk *= t;
        C[k] = static_cast<double>(k) / lambda * S[k - 1];
        S[k] = tk / lambda - static_cast<double>(k) / lambda * C[k - 1];
    }
}

// E_k = integral_t^0 tau^k e^{s (t - tau)} dtau for t <= 0, s > 0:
// E_0 = -expm1(s t)/s, E_k = t^k/s + (k/s) E_{k-1}.
void poly_kernels_exp(double s, double t, std::size_t kmax, std::vector<double>& E) {
    E.assign(kmax + 1, 0.0);
    E[0] = -std::expm1(s * t) / s;
    double tk = 1.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        tk *= t;
        E[k] = tk / s + static_cast<double>(k) / s * E[k - 1];
    }
}

enum class Kernel { sin_kernel, cos_kernel };

// integral_0^t g(tau) * {sin,cos}(lambda (t - tau)) dtau for one catalog
// profile g; analytic per family.
double convolve_osc_analytic(const TemporalProfile& g, Kernel kind, double lambda, double t) {
    return std::visit(
        [&](const auto& prof) -> double {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                if (prof.coeffs.empty()) return 0.0;
                std::vector<double> S, C;
                poly_kernels(lambda, t, prof.coeffs.size() - 1, S, C);
                double acc = 0.0;
                for (std::size_t k = 0; k < prof.coeffs.size(); ++k)
                    acc += prof.coeffs[k] * (kind == Kernel::sin_kernel ? S[k] : C[k]);
                return acc;
            } else if constexpr (std::is_same_v<P, Trig>) {
                const double w = prof.omega;
                const double ph = prof.phase;
                if (kind == Kernel::sin_kernel) {
                    return 0.5 * prof.amplitude *
                           (int_cos(w + lambda, ph - lambda * t, t) -
                            int_cos(w - lambda, ph + lambda * t, t));
                }
                return 0.5 * prof.amplitude *
                       (int_sin(w + lambda, ph - lambda * t, t) +
                        int_sin(w - lambda, ph + lambda * t, t));
            } else if constexpr (std::is_same_v<P, Exponential>) {
                const double r = prof.rate;
                const double d = r * r + lambda * lambda;
                const double ert = std::exp(r * t);
                if (kind == Kernel::sin_kernel)
                    return prof.amplitude *
                           (lambda * ert - r * std::sin(lambda * t) - lambda * std::cos(lambda * t)) /
                           d;
                return prof.amplitude *
                       (r * ert - r * std::cos(lambda * t) + lambda * std::sin(lambda * t)) / d;
            } else {
                return 0.0;  // sampled handled by quadrature
            }
        },
        g);
}

// integral_t^0 g(tau) e^{s (t - tau)} dtau, t <= 0, analytic per family.
double convolve_exp_analytic(const TemporalProfile& g, double s, double t) {
    return std::visit(
        [&](const auto& prof) -> double {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                if (prof.coeffs.empty()) return 0.0;
                std::vector<double> E;
                poly_kernels_exp(s, t, prof.coeffs.size() - 1, E);
                double acc = 0.0;
                for (std::size_t k = 0; k < prof.coeffs.size(); ++k) acc += prof.coeffs[k] * E[k];
                return acc;
            } else if constexpr (std::is_same_v<P, Trig>) {
                const double w = prof.omega;
                const double ph = prof.phase;
                const double d = s * s + w * w;
                return prof.amplitude *
                       (std::exp(s * t) * (-s * std::sin(ph) - w * std::cos(ph)) +
                        s * std::sin(w * t + ph) + w * std::cos(w * t + ph)) /
                       d;
            } else if constexpr (std::is_same_v<P, Exponential>) {
                const double q = prof.rate - s;
                if (q * t > 500.0) {
                    // e^{s t} underflows against e^{r t}; keep the surviving term
                    return prof.amplitude * (std::exp(s * t) - std::exp(prof.rate * t)) / q;
                }
                return -prof.amplitude * std::exp(s * t) * std::expm1(q * t) / q;
            } else {
                return 0.0;
            }
        },
        g);
}

std::vector<double> signal_breakpoints(const SampledSignal& sig, const RectDomain& dom) {
    std::vector<double> bps;
    const std::size_t m = sig.values.size();
    for (std::size_t i = 1; i + 1 < m; ++i)
        bps.push_back(-dom.t_max +
                      2.0 * dom.t_max * static_cast<double>(i) / static_cast<double>(m - 1));
    return bps;
}

// Derivative of the linear interpolant as an exact piecewise-constant slope;
// pointwise finite differences would chase the node kinks forever under
// panel refinement.
double signal_slope(const SampledSignal& sig, const RectDomain& dom, double t) {
    const std::size_t m = sig.values.size();
    if (m < 2) return 0.0;
    const double T = dom.t_max;
    const double h = 2.0 * T / static_cast<double>(m - 1);
    auto i = static_cast<std::ptrdiff_t>(std::floor((t + T) / h));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(m) - 2);
    return (sig.values[i + 1] - sig.values[i]) / h;
}

double convolve_osc_sampled(const SampledSignal& sig, const RectDomain& dom, int order,
                            Kernel kind, double lambda, double t, double tol) {
    if (order >= 2)
        throw UnsupportedDerivativeError(
            "second time derivative is unsupported for sampled signals");
    auto g = [&](double tau) {
        return order == 0 ? eval_temporal(TemporalProfile{sig}, tau, dom)
                          : signal_slope(sig, dom, tau);
    };
    auto integrand = [&](double tau) {
        const double arg = lambda * (t - tau);
        return g(tau) * (kind == Kernel::sin_kernel ? std::sin(arg) : std::cos(arg));
    };
    const auto bps = signal_breakpoints(sig, dom);
    const int min_panels = panels_for_frequency(lambda, t);
    return integrate_adaptive(integrand, 0.0, t, tol, min_panels, bps).value;
}

double convolve_exp_sampled(const SampledSignal& sig, const RectDomain& dom, int order, double s,
                            double t, double tol) {
    if (order >= 2)
        throw UnsupportedDerivativeError(
            "second time derivative is unsupported for sampled signals");
    auto g = [&](double tau) {
        return order == 0 ? eval_temporal(TemporalProfile{sig}, tau, dom)
                          : signal_slope(sig, dom, tau);
    };
    auto integrand = [&](double tau) { return g(tau) * std::exp(s * (t - tau)); };
    std::vector<double> bps = signal_breakpoints(sig, dom);
    if (s * std::abs(t) > 30.0) {
        // integrand lives in a boundary layer of width ~1/s above tau = t
        for (double w = 1.0 / s; t + w < 0.0; w *= 2.0) bps.push_back(t + w);
    }
    return integrate_adaptive(integrand, t, 0.0, tol, 1, bps).value;
}

// order-th analytic derivative of a non-sampled profile
TemporalProfile profile_derivative(const TemporalProfile& g, int order) {
    TemporalProfile d = g;
    for (int k = 0; k < order; ++k) {
        auto next = temporal_derivative(d);
        if (!next)
            throw UnsupportedDerivativeError("derivative unavailable for sampled signal");
        d = *next;
    }
    return d;
}

}  // namespace

double convolve_sin(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol) {
    if (t == 0.0) return 0.0;
    double acc = 0.0;
    const double per_part_tol = tol / std::max<std::size_t>(1, s.parts.size());
    for (const auto& [coef, g] : s.parts) {
        if (const auto* sig = std::get_if<SampledSignal>(&g)) {
            acc += coef * convolve_osc_sampled(*sig, s.dom, order, Kernel::sin_kernel, lambda, t,
                                               per_part_tol / std::max(1.0, std::abs(coef)));
        } else {
            acc += coef * convolve_osc_analytic(profile_derivative(g, order), Kernel::sin_kernel,
                                                lambda, t);
        }
    }
    return acc;
}

double convolve_cos(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol) {
    if (t == 0.0) return 0.0;
    double acc = 0.0;
    const double per_part_tol = tol / std::max<std::size_t>(1, s.parts.size());
    for (const auto& [coef, g] : s.parts) {
        if (const auto* sig = std::get_if<SampledSignal>(&g)) {
            acc += coef * convolve_osc_sampled(*sig, s.dom, order, Kernel::cos_kernel, lambda, t,
                                               per_part_tol / std::max(1.0, std::abs(coef)));
        } else {
            acc += coef * convolve_osc_analytic(profile_derivative(g, order), Kernel::cos_kernel,
                                                lambda, t);
        }
    }
    return acc;
}

double convolve_exp(const ModeCoefficientSamples& s, int order, double lambda, double t,
                    double tol) {
    if (t == 0.0) return 0.0;
    const double s2 = lambda * lambda;
    double acc = 0.0;
    const double per_part_tol = tol / std::max<std::size_t>(1, s.parts.size());
    for (const auto& [coef, g] : s.parts) {
        if (const auto* sig = std::get_if<SampledSignal>(&g)) {
            acc += coef * convolve_exp_sampled(*sig, s.dom, order, s2, t,
                                               per_part_tol / std::max(1.0, std::abs(coef)));
        } else {
            acc += coef * convolve_exp_analytic(profile_derivative(g, order), s2, t);
        }
    }
    return acc;
}

ModeCoefficients mode_coefficients(double f_n0, double fp_n0, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("mode_coefficients: lambda must be > 0");
    const double l2 = lambda * lambda;
    ModeCoefficients out;
    out.a = ((1.0 - l2) * f_n0 - fp_n0) / (l2 * (l2 + 1.0));
    out.b = (2.0 * f_n0 - fp_n0) / (lambda * (l2 + 1.0));
    out.c = out.a;
    return out;
}

double duhamel_hyp(const ModeCoefficientSamples& s, double lambda, double t, double tol) {
    return convolve_sin(s, 0, lambda, t, tol * lambda) / lambda;
}

double duhamel_par(const ModeCoefficientSamples& s, double lambda, double t, double tol) {
    return -convolve_exp(s, 0, lambda, t, tol);
}

ModeSolution make_mode_solution(const Forcing& f, const Eigenpair& pair, const RectDomain& dom,
                                double tol) {
    ModeSolution m;
    m.pair = pair;
    m.samples = make_mode_samples(f, pair, dom, tol);
    m.coeffs = mode_coefficients(m.samples.f_n0, m.samples.fp_n0, pair.lambda);
    m.tol = tol;
    return m;
}

double alpha(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return m.coeffs.a * std::cos(l * t) + m.coeffs.b * std::sin(l * t) +
           duhamel_hyp(m.samples, l, t, m.tol);
}

double beta(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return m.coeffs.c * std::exp(l * l * t) + duhamel_par(m.samples, l, t, m.tol);
}

double alpha_dt(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double f0 = m.samples.f_n0;
    const double fp0 = m.samples.fp_n0;
    const double cs = ((l2 - 1.0) * f0 + fp0) / (l * (l2 + 1.0));
    const double cc = (2.0 * f0 - fp0) / (l2 + 1.0);
    return cs * std::sin(l * t) + cc * std::cos(l * t) + convolve_cos(m.samples, 0, l, t, m.tol);
}

double alpha_dt_direct(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return -m.coeffs.a * l * std::sin(l * t) + m.coeffs.b * l * std::cos(l * t) +
           convolve_cos(m.samples, 0, l, t, m.tol);
}

double alpha_dt_misprint(const ModeSolution& m, double t) {
    // fault: sin prefactor denominator misses the lambda factor
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double f0 = m.samples.f_n0;
    const double fp0 = m.samples.fp_n0;
    const double cs = ((l2 - 1.0) * f0 + fp0) / (l2 + 1.0);
    const double cc = (2.0 * f0 - fp0) / (l2 + 1.0);
    return cs * std::sin(l * t) + cc * std::cos(l * t) + convolve_cos(m.samples, 0, l, t, m.tol);
}

double beta_dt(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double cc = (2.0 * m.samples.f_n0 - m.samples.fp_n0) / (l2 + 1.0);
    return cc * std::exp(l2 * t) - convolve_exp(m.samples, 1, l, t, m.tol);
}

double alpha_dtt(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double f0 = m.samples.f_n0;
    const double fp0 = m.samples.fp_n0;
    if (!m.samples.supports_order(2))
        throw UnsupportedDerivativeError("alpha_dtt needs f_n''");
    const double cc = (2.0 * l2 * f0 + fp0) / (l2 + 1.0);
    const double cs = ((2.0 * l2 + 1.0) * fp0 - 2.0 * l2 * f0) / (l * (l2 + 1.0));
    return cc * std::cos(l * t) + cs * std::sin(l * t) +
           convolve_sin(m.samples, 2, l, t, m.tol * l) / l;
}

double beta_dtt(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    const double l2 = l * l;
    if (!m.samples.supports_order(2))
        throw UnsupportedDerivativeError("beta_dtt needs f_n''");
    const double cc = (2.0 * l2 * m.samples.f_n0 + m.samples.fp_n0) / (l2 + 1.0);
    return cc * std::exp(l2 * t) - convolve_exp(m.samples, 2, l, t, m.tol);
}

double beta_dtt_misprint(const ModeSolution& m, double t) {
    // fault: exponent lambda^2 t replaced by lambda t
    const double l = m.pair.lambda;
    const double l2 = l * l;
    if (!m.samples.supports_order(2))
        throw UnsupportedDerivativeError("beta_dtt needs f_n''");
    const double cc = (2.0 * l2 * m.samples.f_n0 + m.samples.fp_n0) / (l2 + 1.0);
    return cc * std::exp(l * t) - convolve_exp(m.samples, 2, l, t, m.tol);
}

bool has_second_derivative_data(const ModeSolution& m) { return m.samples.supports_order(2); }

double alpha_dtt_ode(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return m.samples.value(t) - l * l * alpha(m, t);
}

double beta_dt_ode(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return l * l * beta(m, t) + m.samples.value(t);
}

double beta_dtt_ode(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return l * l * beta_dt_ode(m, t) + m.samples.deriv(t, 1);
}

double uxx_mode_hyp(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return -l * l * alpha(m, t);
}

double uxx_mode_par(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    return -l * l * beta(m, t);
}

double uxx_hyp_expanded(const ModeSolution& m, double t) {
    return alpha_dtt(m, t) - m.samples.value(t);
}

double uxx_hyp_expanded_misprint(const ModeSolution& m, double t) {
    // fault: 2 lambda^2 f_n(0) -> 2 lambda f_n(0) in the sin numerator
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double f0 = m.samples.f_n0;
    const double fp0 = m.samples.fp_n0;
    if (!m.samples.supports_order(2))
        throw UnsupportedDerivativeError("expanded u_xx needs f_n''");
    const double cc = (2.0 * l2 * f0 + fp0) / (l2 + 1.0);
    const double cs = ((2.0 * l2 + 1.0) * fp0 - 2.0 * l * f0) / (l * (l2 + 1.0));
    return cc * std::cos(l * t) + cs * std::sin(l * t) - m.samples.value(t) +
           convolve_sin(m.samples, 2, l, t, m.tol * l) / l;
}

double uxx_par_expanded(const ModeSolution& m, double t) {
    const double l = m.pair.lambda;
    const double l2 = l * l;
    const double cc = (m.samples.fp_n0 - 2.0 * m.samples.f_n0) / (l2 + 1.0);
    return cc * std::exp(l2 * t) + m.samples.value(t) + convolve_exp(m.samples, 1, l, t, m.tol);
}

ModeConjugationCheck check_mode_conjugation(const ModeSolution& m) {
    ModeConjugationCheck out;
    out.jump_value = std::abs(alpha(m, 0.0) - beta(m, 0.0));
    out.jump_dt = std::abs(alpha_dt(m, 0.0) - beta_dt(m, 0.0));
    if (has_second_derivative_data(m))
        out.jump_dtt = std::abs(alpha_dtt(m, 0.0) - beta_dtt(m, 0.0));
    return out;
}

}  // namespace phrect
