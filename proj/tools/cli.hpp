#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmm::cli {

/// Exit codes of the fmm tool.
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kRuntime = 3,
};

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmm::cli
