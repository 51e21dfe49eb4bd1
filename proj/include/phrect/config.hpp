// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phrect/series.hpp"

namespace phrect {

/// One batch run: geometry, forcing, truncation, grids, tolerances.
/// Round-trips losslessly through JSON.
struct RunConfig {
    RectDomain domain{1.0, 1.0};
    Forcing forcing;
    TruncationPolicy policy = TruncationPolicy::fixed(1);
    int nx = 101;
    int nt = 101;
    double tol_quadrature = 1e-10;
    double tol_residual = 1e-7;
    double tol_jump = 1e-9;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<int> converge_n_list{2, 4, 8, 16};
    int converge_reference_n = 64;
    int scan_n_max = 50;
    double inject_coefficient_error = 0.0;
};

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Loads and validates a config file; throws ConfigError with the offending
/// field path or parse position.
RunConfig load_config(const std::string& path);

/// FNV-1a hash of the canonical serialized form, as fixed-width hex.
std::string config_hash(const RunConfig& cfg);

}  // namespace phrect
