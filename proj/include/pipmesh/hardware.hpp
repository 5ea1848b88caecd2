#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace pipmesh {

// Latencies are kept in integer nanoseconds so that sums are exact.
using Latency = std::chrono::nanoseconds;

double to_ms(Latency latency);
// Rounds to the nearest nanosecond. Throws std::invalid_argument for
// negative or non-finite input.
Latency from_ms(double ms);

enum class LatencyMode : std::uint8_t {
  kSerial,  // per_puc_mean * n
  kLinear,  // intercept + 1000 * k ms per PUC
};

const char* to_string(LatencyMode mode);
LatencyMode parse_latency_mode(std::string_view text);

struct LatencyModel {
  Latency per_puc_mean = from_ms(47.189);
  Latency per_puc_std = from_ms(3.96);
  double linear_slope_k = 0.005;  // seconds per PUC
  Latency linear_intercept{0};
  LatencyMode mode = LatencyMode::kSerial;

  // Throws std::invalid_argument on negative parameters.
  void validate() const;
  // Slope of the linear mode, rounded to whole nanoseconds.
  Latency linear_per_puc() const;
};

// Deterministic configuration latency for `total_pucs` PUCs. Throws
// std::invalid_argument when total_pucs < 0.
Latency estimate_config_latency(const LatencyModel& model, long long total_pucs);

// Monte-Carlo variant: each PUC draws a normal latency around the mode's
// per-PUC cost with per_puc_std spread, clamped at zero.
Latency sample_config_latency(const LatencyModel& model, long long total_pucs, std::mt19937_64& rng);

struct BitrateRow {
  int route_length = 0;  // PUCs
  double bitrate_gbps = 0;
  double loss_percent = 0;

  friend bool operator==(const BitrateRow&, const BitrateRow&) = default;
};

// Step lookup over measured (route length -> bitrate, packet loss) rows.
class BitratePredictor {
 public:
  // The measured table: 9, 13, 17, 19, 21, 23, 25, 27 PUCs.
  BitratePredictor();
  // Throws std::invalid_argument unless lengths strictly increase, bitrate
  // never increases and loss never decreases.
  explicit BitratePredictor(std::vector<BitrateRow> table);

  const std::vector<BitrateRow>& table() const { return table_; }

 private:
  std::vector<BitrateRow> table_;
};

std::vector<BitrateRow> default_bitrate_table();

// Row with the largest length <= route_length; shorter routes use the first
// row. Throws std::invalid_argument when route_length < 1.
BitrateRow predict_bitrate(const BitratePredictor& predictor, int route_length);

// "9.41 Gb/s, 0% loss"
std::string format_prediction(const BitrateRow& row);

// "9:9.41:0,13:9.41:0,..." as used by the config file.
std::vector<BitrateRow> parse_bitrate_table(std::string_view text);

}  // namespace pipmesh
