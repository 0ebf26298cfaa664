#pragma once

#include <string>

#include "aeria/simulator.hpp"

namespace aeria {

// Strict JSON config parsing: unknown keys raise DataError, known keys are
// type-checked, anything omitted keeps its default. Profiles may be given
// inline as objects or as paths relative to the config file; trace paths are
// resolved the same way and loaded eagerly.
MarketConfig config_from_json(const std::string& json_text,
                              const std::string& base_dir = "");
MarketConfig load_config(const std::string& path);

// Serializes the config with profiles inline, so a saved config is
// self-contained up to trace files.
std::string config_to_json(const MarketConfig& config, int indent = 2);
void save_config(const MarketConfig& config, const std::string& path);

}  // namespace aeria
