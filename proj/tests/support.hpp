#pragma once

// Test-only oracles and fixtures. Nothing here calls the solver or the
// verifier's internals; mesh expectations come from plain geometry.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pipmesh/routing.hpp"
#include "pipmesh/verifier.hpp"

namespace testsupport {

using namespace pipmesh;

// Counts expected for an H x W pointy-top odd-row hex grid, computed from
// floating-point cell polygons.
struct GeometricCounts {
  int pucs = 0;
  int vertices = 0;
  int ports = 0;
  int degree1_corners = 0;
};
GeometricCounts geometric_counts(int height, int width);

std::shared_ptr<const MeshTopology> hex(int height, int width);

// Fewest arms from source to drain when every other port is a dead end.
// Ignores vertex side capacity, so it is a lower bound for any route.
std::optional<int> bfs_shortest(const MeshTopology& t, PortId source, PortId drain);

// Arm of `puc` going from terminal `from` to terminal `to`.
ArmId arm_between(const MeshTopology& t, PucId puc, TerminalSlot from, TerminalSlot to);

// Assignment built from explicit paths, with states derived leniently
// (a PUC with both kinds is reported as bar).
RoutingSolution solution_from_paths(const MeshTopology& t, std::vector<std::vector<ArmId>> paths);

std::vector<PucState> lenient_states(const MeshTopology& t,
                                     const std::vector<std::vector<ArmId>>& assignment);

struct Injection {
  std::string name;
  Rule expected;
  RoutingProblem problem;
  RoutingSolution solution;
};

// Corrupts a clean (problem, solution) pair so that exactly `rule` fires.
// Returns nullopt when this instance offers no suitable spot.
std::optional<Injection> inject(Rule rule, const RoutingProblem& problem,
                                const RoutingSolution& solution);

inline const std::vector<Rule> kAllRules = {
    Rule::kEq1, Rule::kEq2, Rule::kEq3, Rule::kEq4,
    Rule::kEq5, Rule::kEq6, Rule::kPathIntegrity, Rule::kStateConflict,
};

// A 2x2 instance with two routes whose optimal solution leaves room for
// every injector.
struct InjectionBase {
  RoutingProblem problem;
  RoutingSolution solution;
};
InjectionBase injection_base();

// Hand-built routes on the 1x1 mesh that the constraints must reject:
// a U-turn at one vertex, two routes crossing one vertex, and a route that
// leaves through an idle port and comes back in.
struct WorkedExample {
  std::string name;
  Rule expected;
  RoutingProblem problem;
  RoutingSolution solution;
};
std::vector<WorkedExample> worked_examples();

}  // namespace testsupport
