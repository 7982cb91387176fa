// SPDX-License-Identifier: Apache-2.0

#ifndef COOPVANET_CLI_HPP
#define COOPVANET_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace coopvanet {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,         // I/O and other runtime errors
    kExitUsage = 2,           // unknown subcommand or bad flags
    kExitInvalidConfig = 3,   // configuration failed validation
    kExitInvariantBreach = 4  // an identity or consistency check failed
};

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coopvanet

#endif  // COOPVANET_CLI_HPP
