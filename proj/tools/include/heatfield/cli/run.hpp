#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "heatfield/cli/config.hpp"

namespace heatfield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// CSV path of a run: config.output if set, else the config file with a
/// .csv extension.
std::filesystem::path csv_path(const ExperimentConfig& config);

/// Manifest path belonging to a CSV path: same stem, .manifest.json.
std::filesystem::path manifest_path(const std::filesystem::path& csv);

/// Runs a validated experiment, writing the CSV and the manifest. Library
/// errors are reported on `diag` and give kExitRuntime.
int run_experiment(const ExperimentConfig& config, std::ostream& diag);

/// Full command: parse `config_path` for `kind`, then run. `out` overrides
/// the CSV destination. A manifest is written even if parsing fails.
int run_command(Experiment kind, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& out, std::ostream& diag);

}  // namespace heatfield::cli
