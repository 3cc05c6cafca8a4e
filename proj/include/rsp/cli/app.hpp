#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsp/service/config.hpp"

namespace rsp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitRemote = 2,
  kExitConformance = 3,
};

/// Runs one command. `args` excludes the program name. `serve` blocks until
/// SIGINT or SIGTERM; every other command returns when done.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const service::EnvLookup& env);

}  // namespace rsp::cli
