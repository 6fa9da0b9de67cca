#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace groth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConvergence = 3;

struct CliConfig {
    std::uint64_t seed = 0;
    int starts = 64;
    std::map<std::string, double> tolerances;  // phase_tolerance, power_relative_tolerance, power_max_iterations
    std::optional<std::string> output_path;
};

/// Reads a --config document; unknown keys, non-positive tolerances and starts < 1 are input errors.
CliConfig load_config(const std::string& path);

/// args excludes the program name. Returns the process exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groth::cli
