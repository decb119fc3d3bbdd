#pragma once

#include <filesystem>
#include <string>

#include "ddsim/scenario.hpp"

namespace ddsim {

/// Load a scenario from a JSON config file. The file either names a
/// `preset` to start from or spells out topology and sources; scalar fields
/// override the preset. A `seed` field is mandatory. Throws ParseError with
/// line/field diagnostics, ConfigError naming the violated invariant.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Same, from a JSON string (diagnostics reference line numbers within it).
ScenarioConfig load_config_from_string(const std::string& text);

/// Serialize the fully expanded scenario (explicit topology and sources).
/// load_config_from_string(config_to_json_string(cfg)) reproduces an equal
/// config; this is what run manifests embed.
std::string config_to_json_string(const ScenarioConfig& config, int indent = 2);

}  // namespace ddsim
