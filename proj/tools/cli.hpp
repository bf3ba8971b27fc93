#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pci::cli {

enum ExitStatus : int {
    kOk = 0,
    kFindings = 1, // validation findings at Error severity
    kUsage = 2,    // usage, I/O or syntax error
};

/// Runs one `pci` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pci::cli
