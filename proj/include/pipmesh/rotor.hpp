#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pipmesh/hardware.hpp"
#include "pipmesh/routing.hpp"
#include "pipmesh/verifier.hpp"

namespace pipmesh {

// Shift matching: port index i sends to (i + k) mod N.
struct Matching {
  int k = 1;
  std::vector<std::pair<int, int>> pairs;  // (source index, drain index), by source

  friend bool operator==(const Matching&, const Matching&) = default;
};

// The N - 1 shift matchings k = 1..N-1. Throws std::invalid_argument if N < 2.
std::vector<Matching> generate_rotor_matchings(int n);

enum class PlacementPolicy : std::uint8_t {
  kSpread,   // 2N ports evenly spaced along enumerate_ports order
  kCorners,  // tx from the front of the order, rx from the back
};

const char* to_string(PlacementPolicy policy);
PlacementPolicy parse_policy(std::string_view text);

struct PortBinding {
  PortId tx;
  PortId rx;

  friend bool operator==(const PortBinding&, const PortBinding&) = default;
};

// Raised when the topology has fewer than 2N ports.
class BindingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<PortBinding> bind_ports(const MeshTopology& topology, int n, PlacementPolicy policy);

struct RotorSchedule {
  int radix = 0;
  PlacementPolicy policy = PlacementPolicy::kSpread;
  std::vector<Matching> matchings;
  std::vector<PortBinding> bindings;  // indexed by port index
};

RotorSchedule make_schedule(const MeshTopology& topology, int n, PlacementPolicy policy);

struct ScheduleOptions {
  std::string backend = "bnb";
  std::chrono::milliseconds budget{60'000};  // per matching
  std::optional<double> max_route_length;    // default 2 * (H + W)
  LatencyModel latency;
  int threads = 1;
};

// One route per pair, route id = source port index.
RoutingProblem matching_problem(std::shared_ptr<const MeshTopology> topology,
                                const RotorSchedule& schedule, const Matching& matching,
                                const ScheduleOptions& options);

struct MatchingResult {
  int k = 0;
  std::size_t n_routes = 0;
  SolveOutcome outcome;
  ViolationReport report;  // empty unless Optimal and the verifier objected
  long long puc_count = 0;  // PUCs left in a non-unused state
  Latency latency{0};
  double solve_ms = 0;

  bool ok() const { return outcome.optimal() && report.clean(); }
};

struct ScheduleResult {
  std::vector<MatchingResult> matchings;  // schedule order

  bool feasible() const;
  bool any_timeout() const;
  // k of the first matching that is not Optimal, if any.
  std::optional<int> first_failing_k() const;
};

ScheduleResult run_schedule(std::shared_ptr<const MeshTopology> topology,
                            const RotorSchedule& schedule, const ScheduleOptions& options);

enum class RadixVerdict : std::uint8_t {
  kFeasible,
  kInfeasible,
  kUnknown,  // some matching timed out
  kInfeasibleByBinding,
};

const char* to_string(RadixVerdict verdict);

struct RadixRecord {
  int radix = 0;
  RadixVerdict verdict = RadixVerdict::kInfeasible;
  std::optional<RotorSchedule> schedule;  // absent when binding failed
  std::optional<ScheduleResult> result;
};

struct RadixSearch {
  int max_feasible = 0;  // 0 when no candidate is feasible
  std::vector<RadixRecord> records;
};

// Runs every candidate (ascending, nonempty) and keeps the largest feasible.
RadixSearch max_feasible_radix(std::shared_ptr<const MeshTopology> topology,
                               PlacementPolicy policy, const std::vector<int>& candidates,
                               const ScheduleOptions& options);

}  // namespace pipmesh
