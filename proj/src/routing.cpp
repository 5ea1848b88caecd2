#include "pipmesh/routing.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

namespace pipmesh {

double default_max_route_length(const MeshTopology& topology) {
  return 2.0 * (topology.height() + topology.width());
}

RoutingProblem::RoutingProblem(std::shared_ptr<const MeshTopology> topology,
                               std::vector<RouteRequest> routes)
    : topology_(std::move(topology)), routes_(std::move(routes)) {
  if (!topology_) throw std::invalid_argument("routing problem needs a topology");
  cost_weights_.assign(topology_->arms().size(), 1.0);
  loss_weights_.assign(topology_->arms().size(), 1.0);
  max_route_length_ = default_max_route_length(*topology_);
  validate();
}

RoutingProblem::RoutingProblem(std::shared_ptr<const MeshTopology> topology,
                               std::vector<RouteRequest> routes,
                               std::vector<double> cost_weights,
                               std::vector<double> loss_weights, double max_route_length)
    : topology_(std::move(topology)),
      routes_(std::move(routes)),
      cost_weights_(std::move(cost_weights)),
      loss_weights_(std::move(loss_weights)),
      max_route_length_(max_route_length) {
  if (!topology_) throw std::invalid_argument("routing problem needs a topology");
  validate();
}

void RoutingProblem::validate() const {
  const auto n_arms = topology_->arms().size();
  if (cost_weights_.size() != n_arms || loss_weights_.size() != n_arms) {
    throw std::invalid_argument(fmt::format("weight vectors must have one entry per arm ({})", n_arms));
  }
  for (std::size_t i = 0; i < n_arms; ++i) {
    if (!(cost_weights_[i] >= 0) || !(loss_weights_[i] >= 0)) {
      throw std::invalid_argument(fmt::format("arm {} has a negative weight", i));
    }
  }
  if (!(max_route_length_ >= 0)) throw std::invalid_argument("max route length must be >= 0");
  std::set<int> ids;
  std::set<PortId> used;
  for (const auto& r : routes_) {
    if (!ids.insert(r.route_id).second) {
      throw std::invalid_argument(fmt::format("duplicate route id {}", r.route_id));
    }
    for (auto p : {r.source, r.drain}) {
      if (!topology_->contains(p)) {
        throw std::invalid_argument(fmt::format("route {}: unknown port {}", r.route_id, p.value));
      }
      if (!used.insert(p).second) {
        throw std::invalid_argument(
            fmt::format("route {}: port {} already used by another endpoint", r.route_id, p.value));
      }
    }
  }
}

RoutingProblem RoutingProblem::with_routes(std::vector<RouteRequest> routes) const {
  return {topology_, std::move(routes), cost_weights_, loss_weights_, max_route_length_};
}

RoutingProblem RoutingProblem::with_max_route_length(double length) const {
  return {topology_, routes_, cost_weights_, loss_weights_, length};
}

RoutingProblem RoutingProblem::with_cost_weights(std::vector<double> weights) const {
  return {topology_, routes_, std::move(weights), loss_weights_, max_route_length_};
}

const char* to_string(PucState state) {
  switch (state) {
    case PucState::kUnused: return "unused";
    case PucState::kBar: return "bar";
    case PucState::kCross: return "cross";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "?";
}

StateConflictError::StateConflictError(PucId puc)
    : std::runtime_error(fmt::format("puc {} has both bar and cross arms assigned", puc.value)),
      puc_(puc) {}

std::vector<PucState> derive_puc_states(const MeshTopology& topology,
                                        const std::vector<std::vector<ArmId>>& assignment) {
  std::vector<PucState> states(topology.pucs().size(), PucState::kUnused);
  for (const auto& arms : assignment) {
    for (auto id : arms) {
      const auto& arm = topology.arm(id);
      const auto want = arm.kind == ArmKind::kBar ? PucState::kBar : PucState::kCross;
      auto& s = states[arm.puc.index()];
      if (s != PucState::kUnused && s != want) throw StateConflictError(arm.puc);
      s = want;
    }
  }
  return states;
}

std::vector<ArmId> trace_route(const MeshTopology& topology, PortId source, PortId drain,
                               const std::vector<ArmId>& arms) {
  std::unordered_set<ArmId> remaining(arms.begin(), arms.end());
  std::vector<ArmId> path;
  Endpoint at = Endpoint::port(source);
  const Endpoint goal = Endpoint::port(drain);
  while (at != goal) {
    ArmId next;
    for (auto id : topology.out_arms(at)) {
      if (remaining.contains(id)) {
        next = id;
        break;
      }
    }
    if (!next.valid()) {
      throw std::runtime_error(fmt::format("route {}->{} breaks at {}", source.value, drain.value,
                                           to_string(at)));
    }
    remaining.erase(next);
    path.push_back(next);
    at = topology.arm(next).head;
  }
  return path;
}

RoutingSolution make_solution(const RoutingProblem& problem,
                              const std::vector<std::vector<ArmId>>& assignment) {
  const auto& topology = problem.topology();
  RoutingSolution s;
  for (std::size_t i = 0; i < problem.routes().size(); ++i) {
    const auto& r = problem.routes()[i];
    auto path = trace_route(topology, r.source, r.drain, assignment.at(i));
    auto set = path;
    std::sort(set.begin(), set.end());
    for (auto id : set) s.objective += problem.cost(id);
    s.paths.push_back(std::move(path));
    s.assignment.push_back(std::move(set));
  }
  s.puc_states = derive_puc_states(topology, s.assignment);
  return s;
}

}  // namespace pipmesh
