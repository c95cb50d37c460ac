#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace binomial::cli {

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,      // unreadable or invalid input, refused request
    kExitArbitrage = 3,  // model admits arbitrage
    kExitCheck = 4,      // a consistency check or oracle comparison failed
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binomial::cli
