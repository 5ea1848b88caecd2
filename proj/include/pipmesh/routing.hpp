#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipmesh/mesh.hpp"

namespace pipmesh {

struct RouteRequest {
  int route_id = 0;
  PortId source;
  PortId drain;
};

// A set of source/drain pairs on a shared topology, with per-arm
// configuration cost, per-arm loss weight, and the per-route loss bound.
class RoutingProblem {
 public:
  // Unit cost and loss weights, bound 2 * (H + W).
  RoutingProblem(std::shared_ptr<const MeshTopology> topology, std::vector<RouteRequest> routes);
  RoutingProblem(std::shared_ptr<const MeshTopology> topology, std::vector<RouteRequest> routes,
                 std::vector<double> cost_weights, std::vector<double> loss_weights,
                 double max_route_length);

  const MeshTopology& topology() const { return *topology_; }
  const std::shared_ptr<const MeshTopology>& topology_ptr() const { return topology_; }
  const std::vector<RouteRequest>& routes() const { return routes_; }
  const std::vector<double>& cost_weights() const { return cost_weights_; }
  const std::vector<double>& loss_weights() const { return loss_weights_; }
  double max_route_length() const { return max_route_length_; }

  double cost(ArmId arm) const { return cost_weights_[arm.index()]; }
  double loss(ArmId arm) const { return loss_weights_[arm.index()]; }

  RoutingProblem with_routes(std::vector<RouteRequest> routes) const;
  RoutingProblem with_max_route_length(double length) const;
  RoutingProblem with_cost_weights(std::vector<double> weights) const;

 private:
  void validate() const;

  std::shared_ptr<const MeshTopology> topology_;
  std::vector<RouteRequest> routes_;
  std::vector<double> cost_weights_;
  std::vector<double> loss_weights_;
  double max_route_length_ = 0;
};

// 2 * (H + W), the bound used for the scaling experiments.
double default_max_route_length(const MeshTopology& topology);

// Physical lossless bound in PUCs (longest measured route with no packet loss).
inline constexpr double kLossless17 = 17.0;

enum class PucState : std::uint8_t { kUnused, kBar, kCross };

const char* to_string(PucState state);

struct RoutingSolution {
  // Indexed like RoutingProblem::routes(). assignment[i] is the set of arms
  // with x = 1 for route i (sorted); paths[i] orders them source to drain.
  std::vector<std::vector<ArmId>> assignment;
  std::vector<std::vector<ArmId>> paths;
  std::vector<PucState> puc_states;
  double objective = 0;
};

enum class SolveStatus : std::uint8_t { kOptimal, kInfeasible, kTimeout };

const char* to_string(SolveStatus status);

struct SolveStats {
  long long nodes_expanded = 0;
  long long nodes_generated = 0;
  long long low_level_searches = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<RoutingSolution> solution;  // set iff Optimal
  std::chrono::milliseconds budget{0};
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }

  static SolveOutcome make_optimal(RoutingSolution s) {
    return {SolveStatus::kOptimal, std::move(s), {}, {}};
  }
  static SolveOutcome make_infeasible() { return {SolveStatus::kInfeasible, {}, {}, {}}; }
  static SolveOutcome make_timeout(std::chrono::milliseconds budget) {
    return {SolveStatus::kTimeout, {}, budget, {}};
  }
};

class StateConflictError : public std::runtime_error {
 public:
  explicit StateConflictError(PucId puc);
  PucId puc() const { return puc_; }

 private:
  PucId puc_;
};

// Bar iff a bar arm of the PUC is assigned, Cross iff a cross arm is.
// Throws StateConflictError naming the PUC if both kinds are assigned.
std::vector<PucState> derive_puc_states(const MeshTopology& topology,
                                        const std::vector<std::vector<ArmId>>& assignment);

// Walks from `source` along assigned arms until `drain`, discarding any arms
// not on that walk (stray cycles). Throws std::runtime_error if the arms do
// not lead from source to drain.
std::vector<ArmId> trace_route(const MeshTopology& topology, PortId source, PortId drain,
                               const std::vector<ArmId>& arms);

// Builds a solution from per-route arm sets: traces each route, drops
// strays, derives states and objective.
RoutingSolution make_solution(const RoutingProblem& problem,
                              const std::vector<std::vector<ArmId>>& assignment);

}  // namespace pipmesh
