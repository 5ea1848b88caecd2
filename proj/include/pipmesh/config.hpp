#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pipmesh/hardware.hpp"
#include "pipmesh/rotor.hpp"

namespace pipmesh {

inline constexpr const char* kConfigEnvVar = "PIPMESH_CONFIG";

// Textual key = value lines; '#' starts a comment. Throws
// std::invalid_argument naming the line on malformed input or repeated keys.
std::map<std::string, std::string> parse_config(std::string_view text);

struct Settings {
  std::chrono::milliseconds budget{60'000};
  std::string backend = "bnb";
  PlacementPolicy policy = PlacementPolicy::kSpread;
  std::optional<double> max_route_length;  // unset: 2 * (H + W)
  int threads = 1;
  LatencyModel latency;
  BitratePredictor bitrate;

  ScheduleOptions schedule_options() const;
};

// Presets for the route length bound: "default" (2 * (H + W)) or "lossless17".
std::optional<double> preset_route_length(std::string_view name);

// Recognized keys: budget_ms, backend, policy, preset, L, threads,
// latency.mode, latency.k, latency.per_puc_ms, latency.std_ms,
// latency.intercept_ms, bitrate.table. Unknown keys are rejected.
void apply_config(Settings& settings, const std::map<std::string, std::string>& values);

// The explicit --config path if given, otherwise $PIPMESH_CONFIG if set.
std::optional<std::filesystem::path> locate_config(const std::string& flag);

}  // namespace pipmesh
