#pragma once

#include <filesystem>

#include "json.hpp"
#include "vspiker/network.hpp"

namespace vspiker {

inline constexpr int kCheckpointVersion = 1;
inline constexpr const char* kCheckpointFormat = "vacuum-spiker-checkpoint";

nlohmann::json lif_params_to_json(const LifParams& p);
LifParams lif_params_from_json(const nlohmann::json& j);

/// Writes the network document with `metadata` stored under "metadata".
void save_checkpoint(const std::filesystem::path& path, const Network& net,
                     const nlohmann::json& metadata = nlohmann::json::object());

/// Restores a network bit-exactly; `metadata` receives the stored metadata.
Network load_checkpoint(const std::filesystem::path& path, nlohmann::json* metadata = nullptr);

}  // namespace vspiker
