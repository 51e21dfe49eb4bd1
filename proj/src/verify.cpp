// SPDX-License-Identifier: Apache-2.0
#include "phrect/verify.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "phrect/parallel.hpp"
#include "phrect/rng.hpp"

namespace phrect {

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    out.front() = a;
    out.back() = b;
    return out;
}

struct NormAccum {
    double linf = 0.0;
    double sumsq = 0.0;

    void add(double r) {
        linf = std::max(linf, std::abs(r));
        sumsq += r * r;
    }
};

}  // namespace

ResidualReport residual_pde(const SpectralSolution& sol, const Forcing& f, int nx, int nt) {
    if (nx < 3 || nt < 3) throw std::invalid_argument("residual_pde: nx, nt must be >= 3");
    const double p = sol.domain.p;
    const double T = sol.domain.t_max;
    const auto xs = linspace(0.0, p, nx);
    const auto ts_hyp = linspace(0.0, T, nt);
    const auto ts_par = linspace(-T, 0.0, nt);
    const double dx = p / (nx - 1);
    const double dt = T / (nt - 1);
    const bool with_utt = utt_available(sol);

    ResidualReport rep;
    rep.nx = nx;
    rep.nt = nt;
    rep.utt_via_ode = !with_utt;

    const int N = static_cast<int>(sol.modes.size());
    std::vector<double> X(static_cast<std::size_t>(N) * nx);
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < nx; ++i) X[n * nx + i] = eval_Xn(sol.modes[n].pair, xs[i]);

    // ---- spectral route: the series' own derivative amplitudes ----
    {
        std::vector<NormAccum> rows_h(nt), rows_p(nt);
        parallel_for(nt, [&](int j) {
            // hyperbolic: r = sum X_n (utt_n + lambda^2 alpha_n) - f
            if (j >= 1) {
                const double t = ts_hyp[j];
                std::vector<double> amp(N);
                for (int n = 0; n < N; ++n) {
                    const auto& m = sol.modes[n];
                    const double l2 = m.pair.lambda * m.pair.lambda;
                    const double utt_n = with_utt ? alpha_dtt(m, t) : alpha_dtt_ode(m, t);
                    amp[n] = utt_n + l2 * alpha(m, t);
                }
                for (int i = 1; i + 1 < nx; ++i) {
                    double acc = 0.0;
                    for (int n = 0; n < N; ++n) acc += X[n * nx + i] * amp[n];
                    rows_h[j].add(acc - eval_f(f, xs[i], t, sol.domain));
                }
            }
            // parabolic: r = sum X_n (ut_n - lambda^2 beta_n) - f
            if (j + 1 < nt) {
                const double t = ts_par[j];
                std::vector<double> amp(N);
                for (int n = 0; n < N; ++n) {
                    const auto& m = sol.modes[n];
                    const double l2 = m.pair.lambda * m.pair.lambda;
                    amp[n] = beta_dt(m, t) - l2 * beta(m, t);
                }
                for (int i = 1; i + 1 < nx; ++i) {
                    double acc = 0.0;
                    for (int n = 0; n < N; ++n) acc += X[n * nx + i] * amp[n];
                    rows_p[j].add(acc - eval_f(f, xs[i], t, sol.domain));
                }
            }
        });
        for (int j = 0; j < nt; ++j) {
            rep.spectral.linf_hyp = std::max(rep.spectral.linf_hyp, rows_h[j].linf);
            rep.spectral.linf_par = std::max(rep.spectral.linf_par, rows_p[j].linf);
            rep.spectral.l2_hyp += rows_h[j].sumsq;
            rep.spectral.l2_par += rows_p[j].sumsq;
        }
        rep.spectral.l2_hyp = std::sqrt(rep.spectral.l2_hyp * dx * dt);
        rep.spectral.l2_par = std::sqrt(rep.spectral.l2_par * dx * dt);
    }

    // ---- stencil route: centered differences of tabulated u only ----
    {
        auto tabulate = [&](const std::vector<double>& ts, Side seam_side) {
            std::vector<double> u(static_cast<std::size_t>(nx) * nt);
            parallel_for(nt, [&](int j) {
                const double t = ts[j];
                const Side side = (t == 0.0) ? seam_side : Side::automatic;
                for (int i = 0; i < nx; ++i)
                    u[static_cast<std::size_t>(i) * nt + j] = eval_u(sol, xs[i], t, side);
            });
            return u;
        };
        const auto uh = tabulate(ts_hyp, Side::plus);
        const auto up = tabulate(ts_par, Side::minus);
        auto at = [&](const std::vector<double>& u, int i, int j) {
            return u[static_cast<std::size_t>(i) * nt + j];
        };

        NormAccum h, pr;
        for (int j = 1; j + 1 < nt; ++j) {
            for (int i = 1; i + 1 < nx; ++i) {
                const double utt = (at(uh, i, j + 1) - 2.0 * at(uh, i, j) + at(uh, i, j - 1)) /
                                   (dt * dt);
                const double uxx = (at(uh, i + 1, j) - 2.0 * at(uh, i, j) + at(uh, i - 1, j)) /
                                   (dx * dx);
                h.add(utt - uxx - eval_f(f, xs[i], ts_hyp[j], sol.domain));

                const double ut = (at(up, i, j + 1) - at(up, i, j - 1)) / (2.0 * dt);
                const double uxx_p = (at(up, i + 1, j) - 2.0 * at(up, i, j) + at(up, i - 1, j)) /
                                     (dx * dx);
                pr.add(ut + uxx_p - eval_f(f, xs[i], ts_par[j], sol.domain));
            }
        }
        rep.stencil.linf_hyp = h.linf;
        rep.stencil.linf_par = pr.linf;
        rep.stencil.l2_hyp = std::sqrt(h.sumsq * dx * dt);
        rep.stencil.l2_par = std::sqrt(pr.sumsq * dx * dt);
    }
    return rep;
}

ConjugationReport check_conjugation(const SpectralSolution& sol, int n_x_samples,
                                    double probe_offset) {
    if (n_x_samples < 1) throw std::invalid_argument("check_conjugation: need >= 1 x sample");
    if (!(probe_offset > 0.0))
        throw std::invalid_argument("check_conjugation: probe_offset must be > 0");

    ConjugationReport rep;
    rep.n_x_samples = n_x_samples;
    rep.probe_offset = probe_offset;
    const double p = sol.domain.p;
    const bool with_utt = utt_available(sol);
    if (with_utt) rep.jump_utt = 0.0;

    for (int k = 1; k <= n_x_samples; ++k) {
        const double x = p * static_cast<double>(k) / (n_x_samples + 1);
        const double up = eval_u(sol, x, 0.0, Side::plus);
        const double um = eval_u(sol, x, 0.0, Side::minus);
        const double utp = eval_ut(sol, x, 0.0, Side::plus);
        const double utm = eval_ut(sol, x, 0.0, Side::minus);
        rep.jump_u = std::max(rep.jump_u, std::abs(up - um));
        rep.jump_ut = std::max(rep.jump_ut, std::abs(utp - utm));
        if (with_utt) {
            const double uttp = eval_utt(sol, x, 0.0, Side::plus);
            const double uttm = eval_utt(sol, x, 0.0, Side::minus);
            rep.jump_utt = std::max(*rep.jump_utt, std::abs(uttp - uttm));
        }

        // One-sided FD estimates from tabulated u alone; these depend on the
        // stored amplitudes, not on the closed prefactor forms.
        const double u_pp = eval_u(sol, x, probe_offset, Side::plus);
        const double u_mm = eval_u(sol, x, -probe_offset, Side::minus);
        rep.fd_jump_u = std::max(rep.fd_jump_u, std::abs(u_pp - u_mm));
        const double fd_ut_plus = (u_pp - up) / probe_offset;
        const double fd_ut_minus = (um - u_mm) / probe_offset;
        rep.fd_jump_ut = std::max(rep.fd_jump_ut, std::abs(fd_ut_plus - fd_ut_minus));

        rep.ut_scale = std::max({rep.ut_scale, std::abs(utp), std::abs(utm)});
    }
    return rep;
}

UniquenessReport uniqueness_probe(const RectDomain& dom, const TruncationPolicy& policy,
                                  const SpectralSolution& probe, double tol) {
    UniquenessReport rep;

    // homogeneous problem: every coefficient and every field value is zero
    const SpectralSolution zero = solve(Forcing::zero(), dom, policy, tol);
    for (const auto& m : zero.modes) {
        rep.homogeneous_max_coeff = std::max(
            {rep.homogeneous_max_coeff, std::abs(m.coeffs.a), std::abs(m.coeffs.b),
             std::abs(m.coeffs.c)});
    }
    for (double xf : {0.25, 0.5, 0.75}) {
        for (double tf : {-0.9, -0.4, 0.4, 0.9}) {
            rep.homogeneous_max_field =
                std::max(rep.homogeneous_max_field,
                         std::abs(eval_u(zero, xf * dom.p, tf * dom.t_max)));
        }
    }
    rep.homogeneous_zero = rep.homogeneous_max_coeff == 0.0 && rep.homogeneous_max_field == 0.0;

    // projection round-trip on the probe solution
    const int N = static_cast<int>(probe.modes.size());
    const double T = dom.t_max;
    const double lambda_top = eigenpair(N + 2, dom).lambda;
    const int min_panels = panels_for_frequency(lambda_top, dom.p);
    const bool with_utt = utt_available(probe);
    if (with_utt) rep.max_ode_residual_hyp = 0.0;

    auto project_field = [&](auto&& field, int n, double t, Side side) {
        const Eigenpair pair = eigenpair(n, dom);
        return integrate_adaptive(
                   [&](double x) { return field(x, t, side) * eval_Xn(pair, x); }, 0.0, dom.p,
                   tol, min_panels)
            .value;
    };
    auto u_field = [&](double x, double t, Side side) { return eval_u(probe, x, t, side); };
    auto ut_field = [&](double x, double t, Side side) { return eval_ut(probe, x, t, side); };
    auto utt_field = [&](double x, double t, Side side) { return eval_utt(probe, x, t, side); };

    const std::vector<double> ts_hyp{0.15 * T, 0.5 * T, 0.9 * T};
    const std::vector<double> ts_par{-0.9 * T, -0.5 * T, -0.15 * T};

    for (int n = 1; n <= N + 2; ++n) {
        for (double t : ts_hyp) {
            const double projected = project_field(u_field, n, t, Side::plus);
            if (n <= N) {
                const double stored = alpha(probe.modes[n - 1], t);
                rep.max_roundtrip_err =
                    std::max(rep.max_roundtrip_err, std::abs(projected - stored));
                const double f_n = project(probe.forcing, eigenpair(n, dom), t, dom, tol);
                if (with_utt) {
                    const double l2 = eigenpair(n, dom).lambda * eigenpair(n, dom).lambda;
                    const double ptt = project_field(utt_field, n, t, Side::plus);
                    rep.max_ode_residual_hyp =
                        std::max(*rep.max_ode_residual_hyp,
                                 std::abs(ptt + l2 * projected - f_n));
                }
            } else {
                rep.max_extra_mode_amp = std::max(rep.max_extra_mode_amp, std::abs(projected));
            }
        }
        for (double t : ts_par) {
            const double projected = project_field(u_field, n, t, Side::minus);
            if (n <= N) {
                const double stored = beta(probe.modes[n - 1], t);
                rep.max_roundtrip_err =
                    std::max(rep.max_roundtrip_err, std::abs(projected - stored));
                const double f_n = project(probe.forcing, eigenpair(n, dom), t, dom, tol);
                const double l2 = eigenpair(n, dom).lambda * eigenpair(n, dom).lambda;
                const double pt = project_field(ut_field, n, t, Side::minus);
                rep.max_ode_residual_par =
                    std::max(rep.max_ode_residual_par, std::abs(pt - l2 * projected - f_n));
            } else {
                rep.max_extra_mode_amp = std::max(rep.max_extra_mode_amp, std::abs(projected));
            }
        }
    }
    return rep;
}

std::vector<BoundCheck> lemma2_bound_check(const ModeCoefficientSamples& s, double lambda,
                                           const RectDomain& dom, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("lemma2_bound_check: trials >= 1");
    const double T = dom.t_max;
    std::vector<int> orders{0, 1};
    if (s.supports_order(2)) orders.push_back(2);

    std::vector<BoundCheck> out;
    SplitMix64 rng(seed);
    for (int k : orders) {
        const double norm_par = mode_l2_norm(s, k, -T, 0.0, 1e-12);
        const double norm_hyp = mode_l2_norm(s, k, 0.0, T, 1e-12);
        const double rhs_par = norm_par / (std::sqrt(2.0) * lambda);
        const double rhs_hyp = std::sqrt(T) / lambda * norm_hyp;
        for (int trial = 0; trial < trials; ++trial) {
            const double t_par = -T * rng.next_double();
            const double t_hyp = T * rng.next_double();
            const double lhs_par = std::abs(convolve_exp(s, k, lambda, t_par, 1e-12));
            const double lhs_hyp =
                std::abs(convolve_sin(s, k, lambda, t_hyp, 1e-12 * lambda)) / lambda;
            const std::string suffix = "_k" + std::to_string(k) + "_t" + std::to_string(trial);
            out.push_back({"exp" + suffix, lhs_par, rhs_par,
                           lhs_par <= rhs_par + 1e-12 * std::max(1.0, rhs_par)});
            out.push_back({"osc" + suffix, lhs_hyp, rhs_hyp,
                           lhs_hyp <= rhs_hyp + 1e-12 * std::max(1.0, rhs_hyp)});
        }
    }
    return out;
}

DegeneracyScan degeneracy_scan(double p, double T, int n_max) {
    if (n_max < 1) throw std::invalid_argument("degeneracy_scan: n_max >= 1");
    if (!(p > 0.0) || T < 0.0) throw std::invalid_argument("degeneracy_scan: bad geometry");
    DegeneracyScan scan;
    scan.p = p;
    scan.T = T;
    scan.n_max = n_max;
    scan.min_abs = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const double lambda = static_cast<double>(n) * std::numbers::pi / p;
        const double v = std::cos(lambda * T) + lambda * std::sin(lambda * T);
        scan.values.push_back(v);
        if (std::abs(v) < scan.min_abs) {
            scan.min_abs = std::abs(v);
            scan.argmin_n = n;
        }
    }
    return scan;
}

ConvergenceStudy convergence_study(const Forcing& f, const RectDomain& dom,
                                   const std::vector<int>& n_list, int reference_n, int nx,
                                   int nt, double tol) {
    if (n_list.empty()) throw std::invalid_argument("convergence_study: empty N list");
    const int n_max_listed = *std::max_element(n_list.begin(), n_list.end());
    if (reference_n <= n_max_listed)
        throw std::invalid_argument("convergence_study: reference_N must exceed max(N_list)");

    const SpectralSolution ref = solve(f, dom, TruncationPolicy::fixed(reference_n), tol);
    const bool with_utt = utt_available(ref);
    const double T = dom.t_max;

    // evaluation points: interior x, both time regions, seam included one-sided
    const auto xs = linspace(0.0, dom.p, nx);
    std::vector<std::pair<double, Side>> times;
    for (int j = 0; j < nt; ++j) {
        const double th = T * static_cast<double>(j) / (nt - 1);
        times.emplace_back(th, th == 0.0 ? Side::plus : Side::automatic);
        const double tp = -T * static_cast<double>(j) / (nt - 1);
        times.emplace_back(tp, tp == 0.0 ? Side::minus : Side::automatic);
    }

    // Modes are independent of the truncation, so the error of truncation N
    // against the reference is the suffix sum of modes N+1..reference.
    std::vector<int> sorted_n = n_list;
    std::sort(sorted_n.begin(), sorted_n.end());
    std::vector<double> err_u(sorted_n.size(), 0.0), err_ut(sorted_n.size(), 0.0),
        err_utt(sorted_n.size(), 0.0), err_uxx(sorted_n.size(), 0.0);

    const int fields = with_utt ? 4 : 3;
    for (const auto& [t, side] : times) {
        const Side s = t > 0.0 ? Side::plus : t < 0.0 ? Side::minus : side;
        std::vector<double> amp(static_cast<std::size_t>(reference_n) * 4, 0.0);
        for (int n = 0; n < reference_n; ++n) {
            const auto& m = ref.modes[n];
            if (s == Side::plus) {
                amp[n * 4 + 0] = alpha(m, t);
                amp[n * 4 + 1] = alpha_dt(m, t);
                amp[n * 4 + 2] = with_utt ? alpha_dtt(m, t) : 0.0;
                amp[n * 4 + 3] = uxx_mode_hyp(m, t);
            } else {
                amp[n * 4 + 0] = beta(m, t);
                amp[n * 4 + 1] = beta_dt(m, t);
                amp[n * 4 + 2] = with_utt ? beta_dtt(m, t) : 0.0;
                amp[n * 4 + 3] = uxx_mode_par(m, t);
            }
        }
        for (int i = 1; i + 1 < nx; ++i) {
            double suffix[4] = {0.0, 0.0, 0.0, 0.0};
            int cursor = static_cast<int>(sorted_n.size()) - 1;
            for (int n = reference_n; n >= 1; --n) {
                const double Xn = eval_Xn(ref.modes[n - 1].pair, xs[i]);
                for (int q = 0; q < fields; ++q) suffix[q] += Xn * amp[(n - 1) * 4 + q];
                while (cursor >= 0 && sorted_n[cursor] == n - 1) {
                    err_u[cursor] = std::max(err_u[cursor], std::abs(suffix[0]));
                    err_ut[cursor] = std::max(err_ut[cursor], std::abs(suffix[1]));
                    err_utt[cursor] = std::max(err_utt[cursor], std::abs(suffix[2]));
                    err_uxx[cursor] = std::max(err_uxx[cursor], std::abs(suffix[3]));
                    --cursor;
                }
            }
        }
    }

    ConvergenceStudy study;
    study.reference_n = reference_n;
    study.utt_included = with_utt;
    study.coefficient_fit = ref.diagnostics.fit;
    for (std::size_t i = 0; i < sorted_n.size(); ++i)
        study.rows.push_back({sorted_n[i], err_u[i], err_ut[i], err_utt[i], err_uxx[i]});

    auto slope = [&](auto field) -> std::optional<double> {
        std::vector<double> lx, ly;
        for (const auto& row : study.rows) {
            const double e = field(row);
            if (e > 0.0) {
                lx.push_back(std::log(static_cast<double>(row.n)));
                ly.push_back(std::log(e));
            }
        }
        if (lx.size() < 2) return std::nullopt;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double m = static_cast<double>(lx.size());
        return (m * sxy - sx * sy) / (m * sxx - sx * sx);
    };
    study.slope_u = slope([](const ConvergenceRow& r) { return r.err_u; });
    study.slope_ut = slope([](const ConvergenceRow& r) { return r.err_ut; });
    study.slope_utt = slope([](const ConvergenceRow& r) { return r.err_utt; });
    study.slope_uxx = slope([](const ConvergenceRow& r) { return r.err_uxx; });
    return study;
}

VerificationReport run_verification(const SpectralSolution& sol, const VerifyOptions& opts) {
    VerificationReport rep;
    rep.options = opts;

    SpectralSolution work = sol;
    if (opts.inject_coefficient_error != 0.0 && !work.modes.empty())
        work.modes.front().coeffs.b += opts.inject_coefficient_error;

    rep.residual = residual_pde(work, work.forcing, opts.nx, opts.nt);

    const double T = work.domain.t_max;
    for (int j = 0; j < opts.nt; ++j) {
        double t = -T + 2.0 * T * static_cast<double>(j) / (opts.nt - 1);
        if (std::abs(t) < 1e-12 * T) t = 0.0;
        const Side side = t == 0.0 ? Side::plus : Side::automatic;
        rep.boundary_max_x0 =
            std::max(rep.boundary_max_x0, std::abs(eval_u(work, 0.0, t, side)));
        rep.boundary_max_xp =
            std::max(rep.boundary_max_xp, std::abs(eval_u(work, work.domain.p, t, side)));
    }

    rep.conjugation = check_conjugation(work, opts.conj_samples, opts.probe_offset);

    for (std::size_t i = 0; i < work.modes.size() && i < 2; ++i) {
        const auto& m = work.modes[i];
        auto checks = lemma2_bound_check(m.samples, m.pair.lambda, work.domain,
                                         opts.lemma2_trials, opts.seed + i);
        for (auto& bc : checks) bc.name = "n" + std::to_string(m.pair.n) + "_" + bc.name;
        rep.bounds.insert(rep.bounds.end(), checks.begin(), checks.end());
    }

    rep.uniqueness = uniqueness_probe(
        work.domain, TruncationPolicy::fixed(std::max(1, work.diagnostics.n_modes)), work,
        std::min(1e-10, work.tol));

    rep.degeneracy = degeneracy_scan(work.domain.p, work.domain.t_max, opts.scan_n_max);
    rep.decay = work.diagnostics.fit;

#ifndef NDEBUG
    {
        // regression-only probe of the wall flux limits: x u_x stays small
        double umax = 0.0;
        double flux = 0.0;
        for (int k = 1; k <= 16; ++k) {
            const double x = work.domain.p * k / 17.0;
            umax = std::max(umax, std::abs(eval_u(work, x, 0.4 * T)));
        }
        for (double xq : {1e-3 * work.domain.p, work.domain.p * (1.0 - 1e-3)}) {
            double acc = 0.0;
            for (const auto& m : work.modes) {
                const double dX =
                    std::sqrt(2.0 / m.pair.p) * m.pair.lambda * std::cos(m.pair.lambda * xq);
                acc += dX * alpha(m, 0.4 * T);
            }
            const double lever = std::min(xq, work.domain.p - xq);
            flux = std::max(flux, std::abs(lever * acc));
        }
        assert(flux <= 1e-2 * std::max(umax, 1e-300) || umax == 0.0);
    }
#endif

    auto add_check = [&](std::string name, bool pass, std::string detail) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.3e", v);
        return std::string(buf);
    };

    add_check("residual_spectral_hyp", rep.residual.spectral.linf_hyp <= opts.tol_residual,
              "Linf " + fmt(rep.residual.spectral.linf_hyp));
    add_check("residual_spectral_par", rep.residual.spectral.linf_par <= opts.tol_residual,
              "Linf " + fmt(rep.residual.spectral.linf_par));
    add_check("boundary",
              rep.boundary_max_x0 <= opts.tol_boundary && rep.boundary_max_xp <= opts.tol_boundary,
              "max " + fmt(std::max(rep.boundary_max_x0, rep.boundary_max_xp)));
    add_check("conjugation_u", rep.conjugation.jump_u <= opts.tol_jump,
              "jump " + fmt(rep.conjugation.jump_u));
    add_check("conjugation_ut", rep.conjugation.jump_ut <= opts.tol_jump,
              "jump " + fmt(rep.conjugation.jump_ut));
    if (rep.conjugation.jump_utt)
        add_check("conjugation_utt", *rep.conjugation.jump_utt <= opts.tol_jump,
                  "jump " + fmt(*rep.conjugation.jump_utt));
    else
        add_check("conjugation_utt", true, "not checked (f_n'' unavailable)");

    const double fd_gate = 1e-4 * std::max(1.0, rep.conjugation.ut_scale);
    add_check("conjugation_fd",
              rep.conjugation.fd_jump_u <= fd_gate && rep.conjugation.fd_jump_ut <= fd_gate,
              "fd jumps " + fmt(rep.conjugation.fd_jump_u) + " / " +
                  fmt(rep.conjugation.fd_jump_ut) + " gate " + fmt(fd_gate));

    const bool bounds_ok =
        std::all_of(rep.bounds.begin(), rep.bounds.end(), [](const BoundCheck& b) { return b.pass; });
    add_check("integral_bounds", bounds_ok, std::to_string(rep.bounds.size()) + " trials");

    add_check("uniqueness_homogeneous", rep.uniqueness.homogeneous_zero,
              "max coeff " + fmt(rep.uniqueness.homogeneous_max_coeff));
    add_check("uniqueness_roundtrip", rep.uniqueness.max_roundtrip_err <= 1e-9,
              "max err " + fmt(rep.uniqueness.max_roundtrip_err));
    const double ode_worst = std::max(rep.uniqueness.max_ode_residual_hyp.value_or(0.0),
                                      rep.uniqueness.max_ode_residual_par);
    add_check("uniqueness_ode", ode_worst <= 1e-7, "max residual " + fmt(ode_worst));

    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckOutcome& c) { return c.pass; });
    return rep;
}

}  // namespace phrect
