// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lgcalab {

/// Exit codes: 0 success, 1 usage or precondition error, 2 numerical
/// failure (eigensolver non-convergence, viscosity fit failure, failed
/// exact check).
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Entry point shared by the `lgcalab` executable and the tests. `args`
/// excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgcalab
