#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace chebvar {

inline constexpr const char* kVersion = "1.0.0";

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfigError = 2,
    kExitResourceError = 3,
};

struct RunRequest {
    std::string subcommand;  // classify, theta, variance, thm1, thm2, check
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> seed;
};

/// Worker count precedence: explicit flag, then CHEBVAR_WORKERS, then config.
unsigned resolve_workers(std::optional<unsigned> flag, unsigned configured);

/// Executes one subcommand end to end: loads the config, computes, writes the
/// CSV artifacts and manifest.txt into the output directory. Diagnostics go to
/// `err`, a short summary to `out`. Returns an ExitCode.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

}  // namespace chebvar
