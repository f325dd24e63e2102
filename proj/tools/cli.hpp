#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multicast::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kBackend = 3,
    kData = 4,
};

/// Entry point shared by the binary and the in-process CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multicast::cli
