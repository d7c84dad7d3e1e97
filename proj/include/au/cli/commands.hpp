// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace au::cli {

/// Runs one aucheck command line (without the program name). Reports go to
/// `out` or to the --out file, diagnostics to `err`. Returns the exit code:
/// 0 ok / Holds, 1 Refuted or error, 2 Inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace au::cli
