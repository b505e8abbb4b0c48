#ifndef TRIFE_CLI_HPP
#define TRIFE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace trife
{

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

/// Suites accepted by `verify`, in output order.
const std::vector<std::string> &known_suites();

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Output goes to `out` unless --out names a file.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace trife

#endif
