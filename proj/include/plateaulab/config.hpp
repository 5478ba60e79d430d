#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "plateaulab/experiments.hpp"

namespace plateaulab {

/// Parse a flat `key = value` config text (dotted keys, # line comments)
/// and validate it. Throws ConfigError listing every problem found.
ExperimentConfig parse_config_text(const std::string& text);

/// parse_config_text over the contents of a file.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Resolved key/value view of a config with all defaults applied, in the
/// same format load_config reads, so formatting and reparsing round-trips.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// config_entries rendered as config text.
std::string format_config(const ExperimentConfig& cfg);

}  // namespace plateaulab
