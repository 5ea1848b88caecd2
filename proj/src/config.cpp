#include "pipmesh/config.hpp"

#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

#include "pipmesh/solver.hpp"

namespace pipmesh {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !(x >= 0)) {
    throw std::invalid_argument(fmt::format("config {}: expected a non-negative number, got '{}'", key, value));
  }
  return x;
}

long long to_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || x < 0) {
    throw std::invalid_argument(fmt::format("config {}: expected a non-negative integer, got '{}'", key, value));
  }
  return x;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", line_no));
    }
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    if (key.empty()) throw std::invalid_argument(fmt::format("config line {}: empty key", line_no));
    if (!out.emplace(key, value).second) {
      throw std::invalid_argument(fmt::format("config line {}: repeated key '{}'", line_no, key));
    }
  }
  return out;
}

ScheduleOptions Settings::schedule_options() const {
  ScheduleOptions o;
  o.backend = backend;
  o.budget = budget;
  o.max_route_length = max_route_length;
  o.latency = latency;
  o.threads = threads;
  return o;
}

std::optional<double> preset_route_length(std::string_view name) {
  if (name == "default") return std::nullopt;
  if (name == "lossless17") return kLossless17;
  throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
}

void apply_config(Settings& s, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "budget_ms") {
      s.budget = std::chrono::milliseconds(to_integer(key, value));
    } else if (key == "backend") {
      make_backend(value);
      s.backend = value;
    } else if (key == "policy") {
      s.policy = parse_policy(value);
    } else if (key == "preset") {
      s.max_route_length = preset_route_length(value);
    } else if (key == "L") {
      s.max_route_length = to_number(key, value);
    } else if (key == "threads") {
      s.threads = static_cast<int>(std::max<long long>(1, to_integer(key, value)));
    } else if (key == "latency.mode") {
      s.latency.mode = parse_latency_mode(value);
    } else if (key == "latency.k") {
      s.latency.linear_slope_k = to_number(key, value);
    } else if (key == "latency.per_puc_ms") {
      s.latency.per_puc_mean = from_ms(to_number(key, value));
    } else if (key == "latency.std_ms") {
      s.latency.per_puc_std = from_ms(to_number(key, value));
    } else if (key == "latency.intercept_ms") {
      s.latency.linear_intercept = from_ms(to_number(key, value));
    } else if (key == "bitrate.table") {
      s.bitrate = BitratePredictor(parse_bitrate_table(value));
    } else {
      throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
    }
  }
  if (values.contains("preset") && values.contains("L")) {
    throw std::invalid_argument("config sets both preset and L");
  }
}

std::optional<std::filesystem::path> locate_config(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

}  // namespace pipmesh
