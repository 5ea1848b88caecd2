#pragma once

#include <vector>

#include "pipmesh/routing.hpp"

namespace pipmesh {

// Every arm-simple trail from the route's source port to its drain port with
// at most `path_length_cap` arms and loss within the problem bound. Trails
// never touch another port. Side capacity is NOT checked here.
std::vector<std::vector<ArmId>> enumerate_route_trails(const RoutingProblem& problem,
                                                       const RouteRequest& route,
                                                       int path_length_cap);

// Exhaustive reference solver for small instances: enumerates trails per
// route, keeps those that respect vertex side capacity on their own, then
// searches all cross-route combinations for the cheapest side-compatible one.
// Never times out; no performance contract.
SolveOutcome brute_force_solve(const RoutingProblem& problem, int path_length_cap);

}  // namespace pipmesh
