#pragma once

namespace randset::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kInfeasible = 3,
};

/// Entry point shared by the `randset` binary and the acceptance suite.
/// Subcommands: gen-target, run, compare, reduce.
int run(int argc, const char* const* argv);

}  // namespace randset::cli
