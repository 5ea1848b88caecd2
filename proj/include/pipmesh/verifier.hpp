#pragma once

#include <string>
#include <vector>

#include "pipmesh/routing.hpp"

namespace pipmesh {

enum class Rule : std::uint8_t {
  kEq1,            // per-route loss bound
  kEq2,            // flow conservation at junction vertices
  kEq3,            // vertex side capacity
  kEq4,            // source port flow
  kEq5,            // drain port flow
  kEq6,            // unnamed ports carry no flow
  kPathIntegrity,  // ordered path is a trail over assigned arms, no strays
  kStateConflict,  // reported PUC states disagree with the assigned arms
};

const char* to_string(Rule rule);

struct Violation {
  Rule rule = Rule::kEq1;
  int route = -1;      // route id, -1 when not tied to one route
  std::string entity;  // "v3", "p7", "puc12", "arm40", ...
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ViolationReport {
  std::vector<Violation> violations;  // sorted by (rule, route, entity)

  bool clean() const { return violations.empty(); }
  bool contains(Rule rule) const;
  std::vector<Rule> rules() const;  // distinct, ascending
};

// Re-checks a claimed solution from the raw arm and vertex lists of the
// topology, without the solver's search structures. Reports every violation.
ViolationReport verify(const RoutingProblem& problem, const RoutingSolution& solution);

// Switch-level check: no route's path visits a port other than its own
// source and drain.
ViolationReport verify_matching_semantics(const RoutingProblem& problem,
                                          const RoutingSolution& solution);

}  // namespace pipmesh
