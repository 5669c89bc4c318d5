#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ftap::cli {

enum ExitCode : int {
    kHolds = 0,
    kFails = 3,
    kInvalidInput = 4,
    kUnsound = 5,
};

struct Terminal {
    bool color = false;  // colored verdict summary on the error stream in --pretty mode
};

/// Runs one command. `args` excludes the program name. The report goes to
/// `out`; errors are written to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        Terminal terminal = {});

}  // namespace ftap::cli
