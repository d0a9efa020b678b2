#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwahba::cli {

/// Process exit status. Scripts may depend on these values.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,       // bad flags or unparseable input
  kInfeasible = 2,  // not (pairwise) similar, or a real-valued observation
  kNumerical = 3,   // solver or oracle failure, or oracle disagreement in bench
};

/// Run the command line with `args` (program name excluded). "-" as an input
/// path reads `in`. The default tolerance is WAHBA_TOL when set, else 1e-9.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qwahba::cli
