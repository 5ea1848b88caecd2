#include "pipmesh/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <fmt/format.h>

namespace pipmesh {

double to_ms(Latency latency) { return static_cast<double>(latency.count()) / 1e6; }

Latency from_ms(double ms) {
  if (!std::isfinite(ms) || ms < 0) {
    throw std::invalid_argument(fmt::format("latency must be a non-negative number, got {}", ms));
  }
  return Latency{std::llround(ms * 1e6)};
}

const char* to_string(LatencyMode mode) {
  return mode == LatencyMode::kSerial ? "serial" : "linear";
}

LatencyMode parse_latency_mode(std::string_view text) {
  if (text == "serial") return LatencyMode::kSerial;
  if (text == "linear") return LatencyMode::kLinear;
  throw std::invalid_argument(fmt::format("unknown latency mode '{}'", text));
}

void LatencyModel::validate() const {
  if (per_puc_mean.count() < 0 || per_puc_std.count() < 0 || linear_intercept.count() < 0 ||
      !(linear_slope_k >= 0)) {
    throw std::invalid_argument("latency model parameters must be >= 0");
  }
}

Latency LatencyModel::linear_per_puc() const { return from_ms(1000.0 * linear_slope_k); }

Latency estimate_config_latency(const LatencyModel& model, long long total_pucs) {
  if (total_pucs < 0) throw std::invalid_argument("total_pucs must be >= 0");
  model.validate();
  if (model.mode == LatencyMode::kSerial) return model.per_puc_mean * total_pucs;
  return model.linear_intercept + model.linear_per_puc() * total_pucs;
}

Latency sample_config_latency(const LatencyModel& model, long long total_pucs,
                              std::mt19937_64& rng) {
  if (total_pucs < 0) throw std::invalid_argument("total_pucs must be >= 0");
  model.validate();
  const Latency mean =
      model.mode == LatencyMode::kSerial ? model.per_puc_mean : model.linear_per_puc();
  std::normal_distribution<double> draw(static_cast<double>(mean.count()),
                                        static_cast<double>(model.per_puc_std.count()));
  Latency sum = model.mode == LatencyMode::kSerial ? Latency{0} : model.linear_intercept;
  for (long long i = 0; i < total_pucs; ++i) {
    sum += Latency{std::llround(std::max(0.0, draw(rng)))};
  }
  return sum;
}

std::vector<BitrateRow> default_bitrate_table() {
  return {
      {9, 9.41, 0},     {13, 9.41, 0},  {17, 9.41, 0},     {19, 3.08, 1.14},
      {21, 2.38, 2.84}, {23, 0, 22.73}, {25, 0, 81.25},    {27, 0, 100},
  };
}

BitratePredictor::BitratePredictor() : table_(default_bitrate_table()) {}

BitratePredictor::BitratePredictor(std::vector<BitrateRow> table) : table_(std::move(table)) {
  if (table_.empty()) throw std::invalid_argument("bitrate table is empty");
  for (std::size_t i = 1; i < table_.size(); ++i) {
    const auto& a = table_[i - 1];
    const auto& b = table_[i];
    if (b.route_length <= a.route_length) {
      throw std::invalid_argument("bitrate table lengths must strictly increase");
    }
    if (b.bitrate_gbps > a.bitrate_gbps) {
      throw std::invalid_argument("bitrate must not increase with route length");
    }
    if (b.loss_percent < a.loss_percent) {
      throw std::invalid_argument("packet loss must not decrease with route length");
    }
  }
}

BitrateRow predict_bitrate(const BitratePredictor& predictor, int route_length) {
  if (route_length < 1) throw std::invalid_argument("route length must be >= 1");
  const auto& t = predictor.table();
  auto it = std::upper_bound(t.begin(), t.end(), route_length,
                             [](int len, const BitrateRow& row) { return len < row.route_length; });
  if (it == t.begin()) return t.front();
  return *std::prev(it);
}

std::string format_prediction(const BitrateRow& row) {
  return fmt::format("{} Gb/s, {}% loss", row.bitrate_gbps, row.loss_percent);
}

std::vector<BitrateRow> parse_bitrate_table(std::string_view text) {
  std::vector<BitrateRow> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string item(text.substr(pos, end - pos));
    BitrateRow row;
    char tail = 0;
    if (std::sscanf(item.c_str(), " %d : %lf : %lf %c", &row.route_length, &row.bitrate_gbps,
                    &row.loss_percent, &tail) != 3) {
      throw std::invalid_argument(fmt::format("bad bitrate table entry '{}'", item));
    }
    rows.push_back(row);
    pos = end + 1;
  }
  return BitratePredictor(std::move(rows)).table();
}

}  // namespace pipmesh
