// SPDX-License-Identifier: Apache-2.0
#include "phrect/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace phrect {

GaussRule GaussRule::compute(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n with the Chebyshev-angle initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& GaussRule::gl16() {
    static const GaussRule rule = compute(16);
    return rule;
}

int panels_for_frequency(double omega, double length) {
    const double cycles = std::abs(omega) * std::abs(length) / (2.0 * std::numbers::pi);
    const double panels = std::ceil(4.0 * cycles);
    if (panels < 1.0) return 1;
    if (panels > 1e6) return 1 << 20;
    return static_cast<int>(panels);
}

namespace {

struct PanelSum {
    double value = 0.0;
    double abs_sum = 0.0;  // sum of |w f|, for the roundoff floor
};

PanelSum sum_panels(const std::function<double(double)>& f, const std::vector<double>& edges,
                    int pieces_per_segment) {
    const GaussRule& gl = GaussRule::gl16();
    PanelSum out;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double seg_a = edges[s];
        const double seg_b = edges[s + 1];
        const double h = (seg_b - seg_a) / pieces_per_segment;
        for (int k = 0; k < pieces_per_segment; ++k) {
            const double a = seg_a + k * h;
            const double mid = a + 0.5 * h;
            const double half = 0.5 * h;
            double acc = 0.0;
            double acc_abs = 0.0;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double v = gl.weights[q] * f(mid + half * gl.nodes[q]);
                acc += v;
                acc_abs += std::abs(v);
            }
            out.value += half * acc;
            out.abs_sum += std::abs(half) * acc_abs;
        }
    }
    return out;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int min_panels,
                              std::span<const double> breakpoints, int panel_budget) {
    if (a == b) return {0.0, 0.0, 0};
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: abs_tol must be > 0");

    std::vector<double> edges{a, b};
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double width = hi - lo;
    for (double bp : breakpoints) {
        if (bp > lo + 1e-14 * width && bp < hi - 1e-14 * width) edges.push_back(bp);
    }
    std::sort(edges.begin(), edges.end());
    if (a > b) std::reverse(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](double u, double v) { return std::abs(u - v) <= 1e-14 * width; }),
                edges.end());
    edges.back() = b;
    edges.front() = a;

    const int n_segments = static_cast<int>(edges.size()) - 1;
    int pieces = std::max(1, (min_panels + n_segments - 1) / n_segments);

    PanelSum cur = sum_panels(f, edges, pieces);
    int total_panels = n_segments * pieces;
    double prev_value = cur.value;

    for (;;) {
        if (2LL * total_panels > panel_budget) {
            // budget exhausted before the refinement difference fell under tol
            const double diff = std::abs(cur.value - prev_value);
            throw QuadratureFailure("quadrature did not converge within the panel budget",
                                    cur.value, diff);
        }
        pieces *= 2;
        total_panels = n_segments * pieces;
        const PanelSum next = sum_panels(f, edges, pieces);
        const double diff = std::abs(next.value - cur.value);
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * next.abs_sum;
        prev_value = cur.value;
        cur = next;
        if (diff <= abs_tol || diff <= floor) {
            return {cur.value, std::max(diff, floor), total_panels};
        }
    }
}

}  // namespace phrect
