#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyf::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kDisagreement = 4,
  kRejection = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 20240229;
inline constexpr const char* kSeedEnv = "HYF_SEED";

/// Runs the tool with `args` (args[0] is the program name) and returns the
/// exit code. Reports go to `out`, diagnostics and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyf::cli
