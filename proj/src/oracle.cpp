// SPDX-License-Identifier: Apache-2.0
#include "phrect/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phrect {

ConjugationSystem ConjugationSystem::assemble(double f_n0, double fp_n0, double lambda) {
    const double l2 = lambda * lambda;
    ConjugationSystem sys;
    sys.matrix = {{{1.0, 0.0, -1.0},
                   {0.0, lambda, -l2},
                   {-l2, 0.0, -l2 * l2}}};
    sys.rhs = {0.0, f_n0, l2 * f_n0 + fp_n0 - f_n0};
    return sys;
}

double ConjugationSystem::determinant() const {
    const auto& m = matrix;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<double, 3> conjugation_solve(double f_n0, double fp_n0, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("conjugation_solve: lambda must be > 0");
    auto sys = ConjugationSystem::assemble(f_n0, fp_n0, lambda);
    auto& A = sys.matrix;
    auto& b = sys.rhs;

    for (int col = 0; col < 2; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double m = A[r][col] / A[col][col];
            if (m == 0.0) continue;
            for (int c = col; c < 3; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < 3; ++c) acc -= A[r][c] * x[c];
        x[r] = acc / A[r][r];
    }
    return x;
}

std::vector<double> integrate_mode_hyp(const ModeCoefficientSamples& s, double lambda, double a,
                                       double b, const std::vector<double>& t_grid) {
    if (t_grid.size() < 2) throw std::invalid_argument("integrate_mode_hyp: grid too short");
    const double h = t_grid[1] - t_grid[0];
    if (!(h > 0.0))
        throw StepConstraintError("integrate_mode_hyp: grid must ascend from 0");
    if (h > 0.05 / lambda)
        throw StepConstraintError("integrate_mode_hyp: step too large; need h <= " +
                                  std::to_string(0.05 / lambda));

    const double l2 = lambda * lambda;
    auto rhs = [&](double t, double y0, double y1, double& d0, double& d1) {
        d0 = y1;
        d1 = s.value(t) - l2 * y0;
    };

    std::vector<double> out(t_grid.size());
    double y0 = a;
    double y1 = lambda * b;
    out[0] = y0;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const double step = t_grid[i + 1] - t_grid[i];
        double k10, k11, k20, k21, k30, k31, k40, k41;
        rhs(t, y0, y1, k10, k11);
        rhs(t + 0.5 * step, y0 + 0.5 * step * k10, y1 + 0.5 * step * k11, k20, k21);
        rhs(t + 0.5 * step, y0 + 0.5 * step * k20, y1 + 0.5 * step * k21, k30, k31);
        rhs(t + step, y0 + step * k30, y1 + step * k31, k40, k41);
        y0 += step / 6.0 * (k10 + 2.0 * k20 + 2.0 * k30 + k40);
        y1 += step / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
        out[i + 1] = y0;
    }
    return out;
}

namespace {

/// Moments mu_k(z) = integral_0^1 sigma^k e^{-z sigma} dsigma, k <= 3.
/// Series below z = 1/2 (the recurrence cancels there), recurrence above.
std::array<double, 4> exp_moments(double z) {
    std::array<double, 4> mu{};
    if (z < 0.5) {
        for (int k = 0; k <= 3; ++k) {
            double term = 1.0;  // (-z)^m / m!
            double acc = 0.0;
            for (int m = 0; m <= 30; ++m) {
                acc += term / (k + m + 1.0);
                term *= -z / (m + 1.0);
            }
            mu[k] = acc;
        }
    } else {
        const double e = std::exp(-z);
        mu[0] = -std::expm1(-z) / z;
        for (int k = 1; k <= 3; ++k) mu[k] = (k * mu[k - 1] - e) / z;
    }
    return mu;
}

}  // namespace

std::vector<double> integrate_mode_par(const ModeCoefficientSamples& s, double lambda, double c,
                                       const std::vector<double>& t_grid) {
    if (t_grid.size() < 2) throw std::invalid_argument("integrate_mode_par: grid too short");
    if (t_grid[1] > t_grid[0])
        throw StepConstraintError(
            "integrate_mode_par: forward march refused; e^{lambda^2 t} grows toward t = 0, so "
            "the parabolic mode must be marched backward from the seam");

    const double l2 = lambda * lambda;

    // Lagrange weights on {0, 1/3, 2/3, 1}, expanded in monomials.
    static const std::array<std::array<double, 4>, 4> lagr = {{
        {1.0, -5.5, 9.0, -4.5},
        {0.0, 9.0, -22.5, 13.5},
        {0.0, -4.5, 18.0, -13.5},
        {0.0, 1.0, -4.5, 4.5},
    }};

    std::vector<double> out(t_grid.size());
    double y = c;
    out[0] = y;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const double h = t - t_grid[i + 1];
        if (!(h > 0.0)) throw StepConstraintError("integrate_mode_par: grid must descend");
        const double z = l2 * h;
        const auto mu = exp_moments(z);
        // beta(t-h) = e^{-z} beta(t) - h * sum_j w_j(z) f(t-h + c_j h),
        // w_j from a cubic interpolant of f on the step
        double quad = 0.0;
        for (int j = 0; j < 4; ++j) {
            double w = 0.0;
            for (int k = 0; k < 4; ++k) w += lagr[j][k] * mu[k];
            const double tau = t_grid[i + 1] + h * (static_cast<double>(j) / 3.0);
            quad += w * s.value(tau);
        }
        y = std::exp(-z) * y - h * quad;
        out[i + 1] = y;
    }
    return out;
}

FdResult fd_propagate(const SpectralSolution& sol, const Forcing& f, int nx, int nt,
                      double ut_seed_scale) {
    if (nx < 3 || nt < 2) throw std::invalid_argument("fd_propagate: grid too small");
    const double p = sol.domain.p;
    const double T = sol.domain.t_max;
    const double dx = p / (nx - 1);
    const double dt = T / (nt - 1);
    if (dt > dx * (1.0 + 1e-12))
        throw StepConstraintError("fd_propagate: CFL violated; need dt <= dx = " +
                                  std::to_string(dx));

    FdResult res;
    res.nx = nx;
    res.nt = nt;
    res.hyp.assign(static_cast<std::size_t>(nx) * nt, 0.0);
    res.par.assign(static_cast<std::size_t>(nx) * nt, 0.0);
    res.dev_hyp_by_level.assign(nt, 0.0);
    res.dev_par_by_level.assign(nt, 0.0);

    std::vector<double> xs(nx);
    for (int i = 0; i < nx; ++i) xs[i] = p * static_cast<double>(i) / (nx - 1);
    auto at = [&](std::vector<double>& field, int i, int m) -> double& {
        return field[static_cast<std::size_t>(i) * nt + m];
    };

    // ---- hyperbolic region: leapfrog for u_tt = u_xx + f ----
    std::vector<double> u_prev(nx), u_cur(nx), u_next(nx, 0.0);
    for (int i = 0; i < nx; ++i) u_prev[i] = eval_u(sol, xs[i], 0.0, Side::plus);
    u_prev.front() = 0.0;
    u_prev.back() = 0.0;

    // first step by Taylor expansion; u_tt(x,0) from the equation itself
    const double r2 = (dt / dx) * (dt / dx);
    for (int i = 1; i < nx - 1; ++i) {
        const double ut0 = ut_seed_scale * eval_ut(sol, xs[i], 0.0, Side::plus);
        const double uxx0 = (u_prev[i + 1] - 2.0 * u_prev[i] + u_prev[i - 1]) / (dx * dx);
        const double utt0 = uxx0 + eval_f(f, xs[i], 0.0, sol.domain);
        u_cur[i] = u_prev[i] + dt * ut0 + 0.5 * dt * dt * utt0;
    }
    u_cur.front() = 0.0;
    u_cur.back() = 0.0;

    for (int i = 0; i < nx; ++i) {
        at(res.hyp, i, 0) = u_prev[i];
        if (nt > 1) at(res.hyp, i, 1) = u_cur[i];
    }
    for (int m = 1; m + 1 < nt; ++m) {
        const double tm = dt * m;
        for (int i = 1; i < nx - 1; ++i) {
            u_next[i] = 2.0 * u_cur[i] - u_prev[i] +
                        r2 * (u_cur[i + 1] - 2.0 * u_cur[i] + u_cur[i - 1]) +
                        dt * dt * eval_f(f, xs[i], tm, sol.domain);
        }
        u_next.front() = 0.0;
        u_next.back() = 0.0;
        std::swap(u_prev, u_cur);
        std::swap(u_cur, u_next);
        for (int i = 0; i < nx; ++i) at(res.hyp, i, m + 1) = u_cur[i];
    }

    // ---- parabolic region: v(x,tau) = u(x,-tau), v_tau = v_xx - f(x,-tau),
    //      Crank-Nicolson with a Thomas solve per step ----
    std::vector<double> v(nx), vn(nx, 0.0);
    for (int i = 0; i < nx; ++i) v[i] = eval_u(sol, xs[i], 0.0, Side::minus);
    v.front() = 0.0;
    v.back() = 0.0;
    for (int i = 0; i < nx; ++i) at(res.par, i, 0) = v[i];

    const double mu = dt / (dx * dx);
    const int inner = nx - 2;
    std::vector<double> diag(inner), lower(inner), upper(inner), rhsv(inner);
    for (int m = 0; m + 1 < nt; ++m) {
        const double tau0 = dt * m;
        const double tau1 = dt * (m + 1);
        for (int k = 0; k < inner; ++k) {
            const int i = k + 1;
            const double lap = v[i + 1] - 2.0 * v[i] + v[i - 1];
            const double src =
                0.5 * (eval_f(f, xs[i], -tau0, sol.domain) + eval_f(f, xs[i], -tau1, sol.domain));
            rhsv[k] = v[i] + 0.5 * mu * lap - dt * src;
            diag[k] = 1.0 + mu;
            lower[k] = -0.5 * mu;
            upper[k] = -0.5 * mu;
        }
        for (int k = 1; k < inner; ++k) {
            const double w = lower[k] / diag[k - 1];
            diag[k] -= w * upper[k - 1];
            rhsv[k] -= w * rhsv[k - 1];
        }
        vn[nx - 1] = 0.0;
        vn[0] = 0.0;
        vn[inner] = rhsv[inner - 1] / diag[inner - 1];
        for (int k = inner - 2; k >= 0; --k)
            vn[k + 1] = (rhsv[k] - upper[k] * vn[k + 2]) / diag[k];
        std::swap(v, vn);
        for (int i = 0; i < nx; ++i) at(res.par, i, m + 1) = v[i];
    }

    // deviations from the spectral fields
    for (int m = 0; m < nt; ++m) {
        const double th = dt * m;
        double dh = 0.0, dp = 0.0;
        for (int i = 0; i < nx; ++i) {
            const Side sh = th == 0.0 ? Side::plus : Side::automatic;
            const Side sp = th == 0.0 ? Side::minus : Side::automatic;
            dh = std::max(dh, std::abs(at(res.hyp, i, m) - eval_u(sol, xs[i], th, sh)));
            dp = std::max(dp, std::abs(at(res.par, i, m) - eval_u(sol, xs[i], -th, sp)));
        }
        res.dev_hyp_by_level[m] = dh;
        res.dev_par_by_level[m] = dp;
        res.max_dev_hyp = std::max(res.max_dev_hyp, dh);
        res.max_dev_par = std::max(res.max_dev_par, dp);
    }
    return res;
}

double quad_reference(const Forcing& f, int n, double t, const RectDomain& dom) {
    const Eigenpair pair = eigenpair(n, dom);
    double acc = 0.0;
    for (const auto& term : f.terms) {
        const double g = eval_temporal(term.temporal, t, dom);
        if (const auto* sine = std::get_if<SineMode>(&term.spatial)) {
            if (sine->k == pair.n) acc += g;
            continue;
        }
        if (g == 0.0) continue;
        std::vector<double> bps;
        if (const auto* sp = std::get_if<SampledProfile>(&term.spatial)) {
            const std::size_t m = sp->values.size();
            for (std::size_t i = 1; i + 1 < m; ++i)
                bps.push_back(dom.p * static_cast<double>(i) / static_cast<double>(m - 1));
        }
        const int min_panels = 10 * panels_for_frequency(pair.lambda, dom.p);
        const auto res = integrate_adaptive(
            [&](double x) { return eval_spatial(term.spatial, x, dom) * eval_Xn(pair, x); }, 0.0,
            dom.p, 1e-13, min_panels, bps, 1 << 17);
        acc += res.value * g;
    }
    return acc;
}

}  // namespace phrect
