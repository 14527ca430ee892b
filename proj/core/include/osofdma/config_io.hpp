#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "osofdma/model.hpp"

namespace osofdma {

// Flat JSON schema:
//   { "x": 4, "y": 10, "t_f_s": 0.02,
//     "coarse": {"delta": .., "phi": .., "tau_s": ..}, "fine": {...},
//     "c_bps": 374400,
//     "classes": {"wpu": {"lambda_per_s": .., "mu_per_s": .., "l": .., "u_max": ..}, ...} }
// Unknown keys are rejected with ConfigError. A class missing from "classes"
// is disabled (u_max = 0); "l" may be omitted for vbr.
SystemConfig parse_config(std::string_view json_text);
SystemConfig load_config(const std::filesystem::path& path);
std::string to_json(const SystemConfig& cfg, int indent = 2);

}  // namespace osofdma
