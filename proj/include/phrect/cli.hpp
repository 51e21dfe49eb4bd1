// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "phrect/config.hpp"

namespace phrect {

/// Stable exit-code contract:
///   0 pass, 1 verification failure, 2 config error, 3 forcing rejected,
///   4 numerical failure (quadrature / step constraints).
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_config_error = 2,
    exit_forcing_rejected = 3,
    exit_numerical_failure = 4,
};

int cmd_solve(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);
int cmd_converge(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);
int cmd_scan(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);
int cmd_selftest(const std::string& scratch_dir, std::ostream& log);

/// Maps an in-flight exception to the exit-code contract.
int exit_code_for_current_exception(std::ostream& log);

}  // namespace phrect
