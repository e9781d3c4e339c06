#pragma once

// Command-line front end: build, verify, search, chartab, gram, srg.

#include <iosfwd>
#include <string>
#include <vector>

namespace linepack::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "LINEPACK_OUT_DIR";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace linepack::cli
