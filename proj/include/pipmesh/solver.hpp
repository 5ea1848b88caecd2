#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pipmesh/routing.hpp"

namespace pipmesh {

// Exact route solver interface. Implementations must either prove optimality,
// prove infeasibility, or report Timeout; they never return a best-effort
// answer.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveOutcome solve(const RoutingProblem& problem,
                             std::chrono::milliseconds budget) const = 0;
};

struct BranchAndBoundOptions {
  // Search nodes kept open before giving up with Timeout.
  std::size_t max_open_nodes = 1'000'000;
  // Conflicts scored per expansion when choosing what to branch on.
  int conflict_lookahead = 8;
  // Max-flow relaxation check before searching.
  bool flow_pruning = true;
};

// Built-in backend: branch and bound over vertex/arm usage. Each search node
// holds one cheapest path per route under that node's exclusions; the sum is
// an admissible lower bound. Branching splits on a shared vertex (one route or
// the other gives it up) or on a route crossing the same vertex twice.
class BranchAndBoundSolver final : public SolverBackend {
 public:
  explicit BranchAndBoundSolver(BranchAndBoundOptions options = {}) : options_(options) {}
  std::string name() const override { return "bnb"; }
  SolveOutcome solve(const RoutingProblem& problem,
                     std::chrono::milliseconds budget) const override;

 private:
  BranchAndBoundOptions options_;
};

// Exhaustive enumeration backend; see brute_force_solve.
class BruteForceSolver final : public SolverBackend {
 public:
  explicit BruteForceSolver(int path_length_cap) : cap_(path_length_cap) {}
  std::string name() const override { return "brute"; }
  SolveOutcome solve(const RoutingProblem& problem,
                     std::chrono::milliseconds budget) const override;

 private:
  int cap_;
};

// "bnb" (default) or "brute". Throws std::invalid_argument for other names.
std::unique_ptr<SolverBackend> make_backend(std::string_view name);
std::vector<std::string> backend_names();

SolveOutcome solve(const RoutingProblem& problem, std::chrono::milliseconds budget);

// Single-commodity relaxation: true when the sources can reach the drains
// with vertex-disjoint flow of value |routes|. False proves infeasibility.
bool flow_relaxation_feasible(const RoutingProblem& problem);

}  // namespace pipmesh
