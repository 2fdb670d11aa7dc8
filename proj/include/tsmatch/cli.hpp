#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsmatch {

/// Parses and runs one invocation. Returns the process exit code:
/// 0 success, 1 usage error, 2 data error, 3 property violation.
/// args excludes the program name. Primary output (TSV/CSV) goes to `out`
/// unless redirected by --out; logs and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsmatch
