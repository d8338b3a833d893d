#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "kaczmarz/io.hpp"

namespace kaczmarz {

/// Process exit codes shared by every command.
enum ExitCode : int {
    exit_ok = 0,        ///< converged / all checks passed
    exit_invalid = 1,   ///< bad config or arguments
    exit_negative = 2,  ///< not converged, negative verdict or failed check
    exit_numeric = 3,   ///< numerical failure
};

int exit_code_for(ErrorKind kind);

enum class Algorithm { classic, dual, augmented };

Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm algorithm);

/// classic/augmented when the config has `e`, dual when it has `phi`.
Algorithm default_algorithm(const ProblemConfig& config);

struct RunArtifact {
    std::filesystem::path trace_csv;
    std::filesystem::path verdict_json;
    std::optional<std::filesystem::path> augmented_csv;
    int exit_code = exit_ok;
};

/// Writes trace.csv and verdict.json (plus augmented.csv for the augmented
/// algorithm) into `out_dir`.
RunArtifact cmd_run(const ProblemConfig& config, Algorithm algorithm,
                    const std::filesystem::path& out_dir, std::ostream& log);

/// Writes diagnose.json and grammian.csv. Exit 2 when the pair is periodic
/// and not effective in its given order.
int cmd_diagnose(const ProblemConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log);

/// obs14 | obs15 | obs16 | obs17finite. Prints one PASS/FAIL line per check.
int cmd_reproduce(const std::string& example, std::ostream& report);

/// Writes sweep.csv with header `delta,trial,classic_radius,pair_radius`.
/// `workers` = 0 picks the hardware concurrency.
int cmd_sweep(const ProblemConfig& base, const std::filesystem::path& out_dir,
              std::ostream& log, unsigned workers = 0);

/// --out if given, else $KACZMARZ_OUT_DIR, else the working directory.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag);

} // namespace kaczmarz
