#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plateaulab/experiments.hpp"

namespace plateaulab {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    int threads = 0;  // 0 = one worker per hardware thread
};

/// Runs the configured sweep and writes records.csv, summary.csv, fit.csv
/// (gradient experiments only) and manifest.json into out_dir. Returns the
/// names of the files written. Throws ConfigError / IoError on failure.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const std::filesystem::path& out_dir,
                                        const RunOptions& opts = {});

/// Process entry point behind the plateaulab binary. Exit codes: 0 on
/// success, 1 on usage or config errors, 2 on runtime failures.
int cli_main(int argc, const char* const* argv);

}  // namespace plateaulab
