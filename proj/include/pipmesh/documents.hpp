#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "pipmesh/json_util.hpp"
#include "pipmesh/rotor.hpp"
#include "pipmesh/routing.hpp"
#include "pipmesh/verifier.hpp"

namespace pipmesh {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// A mesh reference is one of: a full mesh document, {"height": H, "width": W}
// for the hex builder, or a file path (relative paths resolve against
// base_dir).
std::shared_ptr<const MeshTopology> resolve_mesh(const Json& ref,
                                                 const std::filesystem::path& base_dir,
                                                 std::string_view path);

// Problem document:
//   {"mesh": <ref>, "routes": [{"id", "source", "drain"}], "L": 17,
//    "cost_weights": {"<arm>": w}, "loss_weights": {"<arm>": w}}
// L and both weight maps are optional (defaults 2 * (H + W) and 1 per arm).
RoutingProblem problem_from_json(const Json& doc, const std::filesystem::path& base_dir = ".");
// Writes the mesh as {"height", "width"} when it matches the hex builder,
// otherwise inline.
Json problem_to_json(const RoutingProblem& problem);

// Solution document:
//   {"status": "optimal"|"infeasible"|"timeout", "objective": x,
//    "routes": [{"id", "arms": [ordered arm ids]}], "puc_states": ["bar", ...]}
Json outcome_to_json(const RoutingProblem& problem, const SolveOutcome& outcome);

struct LoadedOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<RoutingSolution> solution;  // present iff status is optimal
};

// Routes are matched to the problem by id. The assignment of each route is
// the set of listed arms (duplicates kept, so the verifier can see them).
LoadedOutcome outcome_from_json(const Json& doc, const RoutingProblem& problem);

// {"violations": [{"rule", "route", "entity", "detail"}]}
Json report_to_json(const ViolationReport& report);

// {"mesh": {"height", "width"}, "radix", "policy", "bindings": [{"index", "tx", "rx"}],
//  "matchings": [{"k", "pairs": [[i, j], ...]}]}
Json schedule_to_json(const MeshTopology& topology, const RotorSchedule& schedule);
RotorSchedule schedule_from_json(const Json& doc, const MeshTopology& topology);

// {"radix", "feasible", "matchings": [{"k", "status", "objective", "puc_count",
//  "latency_ms", "solve_ms", "violations"}]}
Json schedule_result_to_json(const RotorSchedule& schedule, const ScheduleResult& result);

}  // namespace pipmesh
