// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "phrect/errors.hpp"

namespace phrect {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussRule compute(int n);
    static const GaussRule& gl16();
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // last refinement difference (or roundoff floor)
    int panels = 0;
};

/// Composite 16-node Gauss-Legendre quadrature of f over [a, b] with dyadic
/// panel refinement until two successive whole-interval estimates differ by
/// at most abs_tol. Initial panel edges honor `breakpoints` (interior kinks
/// of the integrand) and `min_panels` (oscillation resolution). Throws
/// QuadratureFailure with the best estimate once the panel budget would be
/// exceeded.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int min_panels = 1,
                              std::span<const double> breakpoints = {},
                              int panel_budget = 1 << 14);

/// Panel count giving at least four panels per period of an oscillatory
/// factor with angular frequency omega over an interval of given length.
int panels_for_frequency(double omega, double length);

}  // namespace phrect
