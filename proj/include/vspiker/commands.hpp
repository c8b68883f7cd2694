#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "vspiker/error.hpp"
#include "vspiker/run_config.hpp"

namespace vspiker {

/// Series from [data], with label windows applied and optional resampling.
TimeSeries load_run_series(const RunConfig& config);

/// Writes checkpoint.json and training_summary.json into out_dir; returns the summary.
nlohmann::json cmd_train(const RunConfig& config);

/// Writes detection.csv and macs.json; returns the MAC report. Runs on the
/// records after the training prefix, or on the whole series when training
/// used all of it.
nlohmann::json cmd_detect(const RunConfig& config, const std::filesystem::path& checkpoint);

/// Scores a detection CSV (or a fresh detection from `checkpoint`) against
/// the configured labels and writes metrics.json.
nlohmann::json cmd_evaluate(const RunConfig& config, const std::optional<std::filesystem::path>& detection,
                            const std::optional<std::filesystem::path>& checkpoint);

/// Writes ranking.csv; returns its contents.
std::string cmd_grid_search(const RunConfig& config);

/// Per-layer and total MACs of an architecture file, written to energy.json.
nlohmann::json cmd_energy(const std::filesystem::path& spec, const std::filesystem::path& out_dir,
                          std::optional<double> joules_per_mac = std::nullopt);

/// 2 configuration, 3 data, 4 runtime.
int exit_code(ErrorCode code);

}  // namespace vspiker
