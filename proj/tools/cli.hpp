#ifndef QPDAS_TOOLS_CLI_HPP
#define QPDAS_TOOLS_CLI_HPP

#include "qpdas/active_set.hpp"

#include <iosfwd>

namespace qpdas::cli {

enum ExitCode : int
{
  kExitOptimal = 0,
  kExitError = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitIterationLimit = 4,
  kExitInfeasible = 5,
};

int
exit_code(SolveStatus status);

/// Entry point of the qpdas command. Reports go to `out`, diagnostics to
/// `err`.
int
run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qpdas::cli

#endif // QPDAS_TOOLS_CLI_HPP
