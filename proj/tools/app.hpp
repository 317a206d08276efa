#ifndef SUBGEO_TOOLS_APP_HPP
#define SUBGEO_TOOLS_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace subgeo::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kBudgetError = 3,
    kInfeasible = 4,
};

/// Runs the `subgeo` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subgeo::cli

#endif  // SUBGEO_TOOLS_APP_HPP
