// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "phrect/modes.hpp"

namespace phrect {

/// Which one-sided family answers a query at the seam t = 0.
enum class Side { automatic, plus, minus };

enum class Region { hyperbolic, parabolic };

enum class Field { u, ut, utt, uxx };

struct TruncationPolicy {
    enum class Kind { fixed, adaptive };
    Kind kind = Kind::fixed;
    int n_fixed = 1;
    double tail_tol = 1e-8;
    int n_cap = 256;

    static TruncationPolicy fixed(int n);
    static TruncationPolicy adaptive(double tail_tol, int n_cap = 256);
};

struct TruncationDiagnostics {
    int n_modes = 0;
    bool band_limited = false;  // finitely many nonzero modes (sine-only forcing)
    bool tail_certified = false;
    bool hit_cap = false;
    double tail_bound_u = 0.0;  // achieved bound on the dropped u tail, worse region
    std::optional<DecayFit> fit;
};

/// Truncated series solution u = sum_n X_n(x) * (alpha_n or beta_n)(t).
struct SpectralSolution {
    RectDomain domain{1.0, 1.0};
    Forcing forcing;
    std::vector<ModeSolution> modes;  // consecutive from n = 1
    TruncationDiagnostics diagnostics;
    double tol = 1e-10;
};

/// Builds modes 1..N. Rejects forcings failing validate_compat. Adaptive
/// policies stop once the fitted-decay tail bound drops under tail_tol, or
/// flag the tail uncertified at n_cap.
SpectralSolution solve(const Forcing& f, const RectDomain& dom, const TruncationPolicy& policy,
                       double tol);

/// Whether u_tt can be evaluated (needs f_n'').
bool utt_available(const SpectralSolution& sol);

double eval_u(const SpectralSolution& sol, double x, double t, Side side = Side::automatic);
double eval_ut(const SpectralSolution& sol, double x, double t, Side side = Side::automatic);
double eval_utt(const SpectralSolution& sol, double x, double t, Side side = Side::automatic);
double eval_uxx(const SpectralSolution& sol, double x, double t, Side side = Side::automatic);

struct TailBound {
    double value = 0.0;
    bool heuristic = false;  // fit extrapolated without enough data, or a needed fit missing
};

/// Bound on the dropped tail sum_{n>N} |term| for the given field and region,
/// assembled from fitted coefficient decay, the closed-form prefactor
/// denominators, and Cauchy-Schwarz integral bounds (constants 1/sqrt(2) and
/// sqrt(T)). Exactly zero for band-limited forcings.
TailBound tail_bound(const SpectralSolution& sol, Field field, Region region);

/// Tabulated fields on a uniform grid, x-major. When the time grid contains
/// t = 0 the node is stored twice, as t = 0- then t = 0+, so the seam jumps
/// stay observable.
struct FieldGrid {
    std::vector<double> x;
    std::vector<double> t;     // time rows after seam duplication
    std::vector<int> side;     // per time row: -1 seam minus, +1 seam plus, 0 interior
    std::vector<double> u, ut, uxx;
    std::optional<std::vector<double>> utt;

    std::size_t rows() const { return t.size(); }
    std::size_t index(std::size_t ix, std::size_t it) const { return ix * t.size() + it; }
};

FieldGrid sample_grid(const SpectralSolution& sol, int nx, int nt);

}  // namespace phrect
