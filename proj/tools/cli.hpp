#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsacount::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kDomain = 3,
};

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsacount::cli
