// SPDX-License-Identifier: Apache-2.0
#include "phrect/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phrect/parallel.hpp"

namespace phrect {

TruncationPolicy TruncationPolicy::fixed(int n) {
    if (n < 1) throw std::invalid_argument("TruncationPolicy: N must be >= 1");
    TruncationPolicy p;
    p.kind = Kind::fixed;
    p.n_fixed = n;
    p.n_cap = std::max(n, p.n_cap);
    return p;
}

TruncationPolicy TruncationPolicy::adaptive(double tail_tol, int n_cap) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("TruncationPolicy: tail_tol must be > 0");
    if (n_cap < 1) throw std::invalid_argument("TruncationPolicy: n_cap must be >= 1");
    TruncationPolicy p;
    p.kind = Kind::adaptive;
    p.tail_tol = tail_tol;
    p.n_cap = n_cap;
    return p;
}

namespace {

/// Highest nonzero mode for sine-only forcings, 0 for the zero forcing,
/// -1 when the forcing is not band-limited.
int band_limit(const Forcing& f) {
    int band = 0;
    for (const auto& term : f.terms) {
        const auto* sine = std::get_if<SineMode>(&term.spatial);
        if (!sine) return -1;
        band = std::max(band, sine->k);
    }
    return band;
}

void append_modes(std::vector<ModeSolution>& modes, const Forcing& f, const RectDomain& dom,
                  int up_to, double tol) {
    const int first = static_cast<int>(modes.size()) + 1;
    if (up_to < first) return;
    const int count = up_to - first + 1;
    std::vector<ModeSolution> fresh(count);
    parallel_for(count, [&](int i) {
        fresh[i] = make_mode_solution(f, eigenpair(first + i, dom), dom, tol);
    });
    for (auto& m : fresh) {
        const auto check = check_mode_conjugation(m);
        const double scale =
            std::max({1.0, std::abs(m.samples.f_n0), std::abs(m.samples.fp_n0)});
        const double worst = std::max({check.jump_value, check.jump_dt,
                                       check.jump_dtt.value_or(0.0)});
        if (worst > 1e-9 * scale)
            throw std::logic_error("mode " + std::to_string(m.pair.n) +
                                   " failed its seam matching identity");
        modes.push_back(std::move(m));
    }
}

struct FitOrFallback {
    DecayFit fit;
    bool heuristic = false;
};

/// Power-law fit of a magnitude sequence indexed by mode number; too few
/// nonzero entries fall back to quadratic decay anchored at the largest
/// observed magnitude, flagged heuristic.
FitOrFallback fit_sequence(const std::vector<double>& mags) {
    std::vector<int> ns(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i) ns[i] = static_cast<int>(i) + 1;
    try {
        return {fit_power_law(ns, mags), false};
    } catch (const InsufficientDataError&) {
        double peak = 0.0;
        int peak_n = 1;
        for (std::size_t i = 0; i < mags.size(); ++i) {
            if (std::abs(mags[i]) > peak) {
                peak = std::abs(mags[i]);
                peak_n = static_cast<int>(i) + 1;
            }
        }
        if (peak == 0.0) return {DecayFit{0.0, -2.0, 0}, false};
        return {DecayFit{peak * peak_n * peak_n, -2.0, 0}, true};
    }
}

struct TailModel {
    RectDomain dom{1.0, 1.0};
    FitOrFallback f0, f1, s0h, s0p, s1p;
    bool have_second = false;
    FitOrFallback s2h, s2p;
};

TailModel build_tail_model(const std::vector<ModeSolution>& modes, const RectDomain& dom) {
    TailModel model;
    model.dom = dom;
    const double T = dom.t_max;
    const std::size_t N = modes.size();
    std::vector<double> f0(N), f1(N), s0h(N), s0p(N), s1p(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& s = modes[i].samples;
        f0[i] = std::abs(s.f_n0);
        f1[i] = std::abs(s.fp_n0);
        s0h[i] = s.sup_bound(0, 0.0, T);
        s0p[i] = s.sup_bound(0, -T, 0.0);
        s1p[i] = s.sup_bound(1, -T, 0.0);
    }
    model.f0 = fit_sequence(f0);
    model.f1 = fit_sequence(f1);
    model.s0h = fit_sequence(s0h);
    model.s0p = fit_sequence(s0p);
    model.s1p = fit_sequence(s1p);
    model.have_second =
        !modes.empty() && std::all_of(modes.begin(), modes.end(), [](const ModeSolution& m) {
            return m.samples.supports_order(2);
        });
    if (model.have_second) {
        std::vector<double> s2h(N), s2p(N);
        for (std::size_t i = 0; i < N; ++i) {
            s2h[i] = modes[i].samples.sup_bound(2, 0.0, T);
            s2p[i] = modes[i].samples.sup_bound(2, -T, 0.0);
        }
        model.s2h = fit_sequence(s2h);
        model.s2p = fit_sequence(s2p);
    }
    return model;
}

double extrap(const FitOrFallback& f, int n) {
    return f.fit.amplitude * std::pow(static_cast<double>(n), f.fit.rate);
}

/// Per-mode term bound for one field/region, from the closed-form prefactors
/// and the Cauchy-Schwarz kernel bounds sqrt(T)/lambda (oscillatory) and
/// 1/(sqrt(2) lambda) (exponential).
double term_bound(const TailModel& md, Field field, Region region, int n) {
    const double p = md.dom.p;
    const double T = md.dom.t_max;
    const double lam = static_cast<double>(n) * std::numbers::pi / p;
    const double l2 = lam * lam;
    const double xm = std::sqrt(2.0 / p);
    const double F0 = extrap(md.f0, n);
    const double F1 = extrap(md.f1, n);
    const double sqT = std::sqrt(T);

    const double a_bound = ((1.0 + l2) * F0 + F1) / (l2 * (l2 + 1.0));
    const double b_bound = (2.0 * F0 + F1) / (lam * (l2 + 1.0));

    if (region == Region::hyperbolic) {
        const double S0 = extrap(md.s0h, n);
        const double duh_u = (sqT / lam) * (sqT * S0);
        const double u_term = a_bound + b_bound + duh_u;
        switch (field) {
            case Field::u:
                return xm * u_term;
            case Field::ut: {
                const double cs = ((l2 + 1.0) * F0 + F1) / (lam * (l2 + 1.0));
                const double cc = (2.0 * F0 + F1) / (l2 + 1.0);
                return xm * (cs + cc + T * S0);
            }
            case Field::utt: {
                if (md.have_second) {
                    const double S2 = extrap(md.s2h, n);
                    const double cc = (2.0 * l2 * F0 + F1) / (l2 + 1.0);
                    const double cs = ((2.0 * l2 + 1.0) * F1 + 2.0 * l2 * F0) / (lam * (l2 + 1.0));
                    return xm * (cc + cs + (sqT / lam) * (sqT * S2));
                }
                return xm * (l2 * u_term + S0);  // |alpha''| <= lambda^2 |alpha| + |f_n|
            }
            case Field::uxx:
                return xm * l2 * u_term;
        }
    } else {
        const double S0 = extrap(md.s0p, n);
        const double S1 = extrap(md.s1p, n);
        const double u_term = a_bound + (1.0 / (std::sqrt(2.0) * lam)) * (sqT * S0);
        const double ut_term =
            (2.0 * F0 + F1) / (l2 + 1.0) + (1.0 / (std::sqrt(2.0) * lam)) * (sqT * S1);
        switch (field) {
            case Field::u:
                return xm * u_term;
            case Field::ut:
                return xm * ut_term;
            case Field::utt: {
                if (md.have_second) {
                    const double S2 = extrap(md.s2p, n);
                    return xm * ((2.0 * l2 * F0 + F1) / (l2 + 1.0) +
                                 (1.0 / (std::sqrt(2.0) * lam)) * (sqT * S2));
                }
                return xm * (l2 * ut_term + S1);  // beta'' = lambda^2 beta' + f_n'
            }
            case Field::uxx:
                return xm * l2 * u_term;
        }
    }
    return 0.0;
}

TailBound sum_tail(const TailModel& md, Field field, Region region, int N) {
    bool heuristic = md.f0.heuristic || md.f1.heuristic || md.s0h.heuristic ||
                     md.s0p.heuristic || md.s1p.heuristic;
    if (md.have_second && (field == Field::utt))
        heuristic = heuristic || md.s2h.heuristic || md.s2p.heuristic;

    double acc = 0.0;
    const int chunk_end = N + 65536;
    double last = 0.0, prev = 0.0;
    int last_n = N;
    for (int n = N + 1; n <= chunk_end; ++n) {
        prev = last;
        last = term_bound(md, field, region, n);
        last_n = n;
        acc += last;
        if (last < 1e-16 * acc || last == 0.0) break;
    }
    if (last > 0.0 && prev > 0.0 && last_n > N + 1) {
        // integral-comparison remainder using the local decay exponent
        const double sigma = std::log(last / prev) /
                             std::log(static_cast<double>(last_n) / (last_n - 1));
        if (sigma < -1.0) {
            acc += last * static_cast<double>(last_n) / (-1.0 - sigma);
        } else {
            heuristic = true;  // fitted tail does not converge; bound is nominal
        }
    }
    return {acc, heuristic};
}

Side resolve_side(double t, Side side) {
    if (t > 0.0) return Side::plus;
    if (t < 0.0) return Side::minus;
    if (side == Side::automatic)
        throw SeamAmbiguityError("query at t = 0 requires an explicit side (plus or minus)");
    return side;
}

}  // namespace

SpectralSolution solve(const Forcing& f, const RectDomain& dom, const TruncationPolicy& policy,
                       double tol) {
    const auto violations = validate_compat(f, dom);
    if (!violations.empty()) {
        std::string msg = "forcing rejected:";
        std::vector<std::string> codes;
        for (const auto& v : violations) {
            msg += " [" + v.code + "] " + v.message + ";";
            codes.push_back(v.code);
        }
        throw RejectedForcingError(msg, codes);
    }

    SpectralSolution sol;
    sol.domain = dom;
    sol.forcing = f;
    sol.tol = tol;

    const int band = band_limit(f);
    sol.diagnostics.band_limited = band >= 0;

    if (policy.kind == TruncationPolicy::Kind::fixed) {
        append_modes(sol.modes, f, dom, policy.n_fixed, tol);
        if (band >= 0) {
            sol.diagnostics.tail_certified = policy.n_fixed >= band;
            sol.diagnostics.tail_bound_u = 0.0;
            if (policy.n_fixed < band) {
                const auto model = build_tail_model(sol.modes, dom);
                const auto th = sum_tail(model, Field::u, Region::hyperbolic, policy.n_fixed);
                const auto tp = sum_tail(model, Field::u, Region::parabolic, policy.n_fixed);
                sol.diagnostics.tail_bound_u = std::max(th.value, tp.value);
            }
        } else {
            const auto model = build_tail_model(sol.modes, dom);
            const auto th = sum_tail(model, Field::u, Region::hyperbolic, policy.n_fixed);
            const auto tp = sum_tail(model, Field::u, Region::parabolic, policy.n_fixed);
            sol.diagnostics.tail_bound_u = std::max(th.value, tp.value);
            sol.diagnostics.tail_certified = false;
        }
    } else {
        if (band >= 0) {
            const int want = std::max(1, band);
            const int n = std::min(want, policy.n_cap);
            append_modes(sol.modes, f, dom, n, tol);
            sol.diagnostics.hit_cap = want > policy.n_cap;
            sol.diagnostics.tail_certified = !sol.diagnostics.hit_cap;
            sol.diagnostics.tail_bound_u = 0.0;
        } else {
            int n = std::min(8, policy.n_cap);
            append_modes(sol.modes, f, dom, n, tol);
            for (;;) {
                const auto model = build_tail_model(sol.modes, dom);
                const auto th = sum_tail(model, Field::u, Region::hyperbolic, n);
                const auto tp = sum_tail(model, Field::u, Region::parabolic, n);
                const double bound = std::max(th.value, tp.value);
                const bool heuristic = th.heuristic || tp.heuristic;
                sol.diagnostics.tail_bound_u = bound;
                if (!heuristic && bound <= policy.tail_tol) {
                    sol.diagnostics.tail_certified = true;
                    break;
                }
                if (n >= policy.n_cap) {
                    sol.diagnostics.hit_cap = true;
                    break;
                }
                n = std::min(2 * n, policy.n_cap);
                append_modes(sol.modes, f, dom, n, tol);
            }
        }
    }

    sol.diagnostics.n_modes = static_cast<int>(sol.modes.size());
    if (!sol.diagnostics.band_limited) {
        std::vector<double> mags;
        std::vector<int> ns;
        for (const auto& m : sol.modes) {
            ns.push_back(m.pair.n);
            mags.push_back(std::max(std::abs(m.samples.f_n0),
                                    m.samples.sup_bound(0, -dom.t_max, dom.t_max)));
        }
        try {
            sol.diagnostics.fit = fit_power_law(ns, mags);
        } catch (const InsufficientDataError&) {
            sol.diagnostics.fit.reset();
        }
    }
    return sol;
}

bool utt_available(const SpectralSolution& sol) {
    return std::all_of(sol.modes.begin(), sol.modes.end(),
                       [](const ModeSolution& m) { return has_second_derivative_data(m); });
}

namespace {

template <class Hyp, class Par>
double eval_sum(const SpectralSolution& sol, double x, double t, Side side, Hyp hyp, Par par) {
    sol.domain.require_inside(x, t);
    const Side s = resolve_side(t, side);
    double acc = 0.0;
    for (const auto& m : sol.modes) {
        const double amp = (s == Side::plus) ? hyp(m, t) : par(m, t);
        acc += eval_Xn(m.pair, x) * amp;
    }
    return acc;
}

}  // namespace

double eval_u(const SpectralSolution& sol, double x, double t, Side side) {
    return eval_sum(sol, x, t, side, [](const ModeSolution& m, double tt) { return alpha(m, tt); },
                    [](const ModeSolution& m, double tt) { return beta(m, tt); });
}

double eval_ut(const SpectralSolution& sol, double x, double t, Side side) {
    return eval_sum(sol, x, t, side,
                    [](const ModeSolution& m, double tt) { return alpha_dt(m, tt); },
                    [](const ModeSolution& m, double tt) { return beta_dt(m, tt); });
}

double eval_utt(const SpectralSolution& sol, double x, double t, Side side) {
    if (!utt_available(sol))
        throw UnsupportedDerivativeError("u_tt unavailable: the forcing cannot supply f_n''");
    return eval_sum(sol, x, t, side,
                    [](const ModeSolution& m, double tt) { return alpha_dtt(m, tt); },
                    [](const ModeSolution& m, double tt) { return beta_dtt(m, tt); });
}

double eval_uxx(const SpectralSolution& sol, double x, double t, Side side) {
    return eval_sum(sol, x, t, side,
                    [](const ModeSolution& m, double tt) { return uxx_mode_hyp(m, tt); },
                    [](const ModeSolution& m, double tt) { return uxx_mode_par(m, tt); });
}

TailBound tail_bound(const SpectralSolution& sol, Field field, Region region) {
    const int N = static_cast<int>(sol.modes.size());
    if (sol.diagnostics.band_limited) return {0.0, false};
    const auto model = build_tail_model(sol.modes, sol.domain);
    return sum_tail(model, field, region, N);
}

FieldGrid sample_grid(const SpectralSolution& sol, int nx, int nt) {
    if (nx < 3 || nt < 3) throw std::invalid_argument("sample_grid: nx and nt must be >= 3");
    const double p = sol.domain.p;
    const double T = sol.domain.t_max;

    FieldGrid grid;
    grid.x.resize(nx);
    for (int i = 0; i < nx; ++i) grid.x[i] = p * static_cast<double>(i) / (nx - 1);
    grid.x.front() = 0.0;
    grid.x.back() = p;

    for (int j = 0; j < nt; ++j) {
        double t = -T + 2.0 * T * static_cast<double>(j) / (nt - 1);
        if (j == 0) t = -T;
        if (j == nt - 1) t = T;
        if (std::abs(t) < 1e-12 * T) t = 0.0;
        if (t == 0.0) {
            grid.t.push_back(0.0);
            grid.side.push_back(-1);
            grid.t.push_back(0.0);
            grid.side.push_back(+1);
        } else {
            grid.t.push_back(t);
            grid.side.push_back(0);
        }
    }

    const std::size_t rows = grid.t.size();
    const bool with_utt = utt_available(sol);
    grid.u.assign(nx * rows, 0.0);
    grid.ut.assign(nx * rows, 0.0);
    grid.uxx.assign(nx * rows, 0.0);
    if (with_utt) grid.utt = std::vector<double>(nx * rows, 0.0);

    parallel_for(nx, [&](int ix) {
        const double x = grid.x[ix];
        for (std::size_t it = 0; it < rows; ++it) {
            const double t = grid.t[it];
            const Side side = grid.side[it] == 0 ? Side::automatic
                              : grid.side[it] < 0 ? Side::minus
                                                  : Side::plus;
            const std::size_t idx = grid.index(ix, it);
            grid.u[idx] = eval_u(sol, x, t, side);
            grid.ut[idx] = eval_ut(sol, x, t, side);
            grid.uxx[idx] = eval_uxx(sol, x, t, side);
            if (with_utt) (*grid.utt)[idx] = eval_utt(sol, x, t, side);
        }
    });
    return grid;
}

}  // namespace phrect
