#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvgauge::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnv = "CURVGAUGE_SEED";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`
/// (or the --out file); per-check summary lines go to `log`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace curvgauge::cli
