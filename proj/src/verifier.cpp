#include "pipmesh/verifier.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace pipmesh {

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::kEq1: return "Eq1";
    case Rule::kEq2: return "Eq2";
    case Rule::kEq3: return "Eq3";
    case Rule::kEq4: return "Eq4";
    case Rule::kEq5: return "Eq5";
    case Rule::kEq6: return "Eq6";
    case Rule::kPathIntegrity: return "PathIntegrity";
    case Rule::kStateConflict: return "StateConflict";
  }
  return "?";
}

bool ViolationReport::contains(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::vector<Rule> ViolationReport::rules() const {
  std::set<Rule> s;
  for (const auto& v : violations) s.insert(v.rule);
  return {s.begin(), s.end()};
}

namespace {

constexpr double kEps = 1e-9;

// "v12" -> ("v", 12) so that v2 sorts before v10.
std::pair<std::string, long> entity_key(const std::string& e) {
  std::size_t i = 0;
  while (i < e.size() && !std::isdigit(static_cast<unsigned char>(e[i]))) ++i;
  long n = -1;
  if (i < e.size()) {
    try {
      n = std::stol(e.substr(i));
    } catch (...) {
      n = -1;
    }
  }
  return {e.substr(0, i), n};
}

void sort_report(ViolationReport& report) {
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return std::tuple(a.rule, a.route, entity_key(a.entity)) <
                            std::tuple(b.rule, b.route, entity_key(b.entity));
                   });
}

std::string vname(int v) { return fmt::format("v{}", v); }
std::string pname(int p) { return fmt::format("p{}", p); }

// Index structures rebuilt from the raw topology lists.
struct Index {
  explicit Index(const MeshTopology& t)
      : n_arms(t.arms().size()),
        n_vertices(t.vertices().size()),
        n_ports(t.ports().size()),
        side_slots(n_arms, {-1, -1}) {
    for (const auto& v : t.vertices()) {
      for (auto id : v.side_a) add_slot(id, 2 * v.id.value);
      for (auto id : v.side_b) add_slot(id, 2 * v.id.value + 1);
    }
  }

  void add_slot(ArmId id, int slot) {
    auto& s = side_slots[id.index()];
    (s[0] < 0 ? s[0] : s[1]) = slot;
  }

  std::size_t n_arms;
  std::size_t n_vertices;
  std::size_t n_ports;
  std::vector<std::array<int, 2>> side_slots;
};

struct Flow {
  std::vector<int> v_in, v_out, p_in, p_out;

  Flow(std::size_t nv, std::size_t np) : v_in(nv), v_out(nv), p_in(np), p_out(np) {}

  void add(const DirectedArm& a) {
    if (a.tail.is_vertex()) {
      ++v_out[static_cast<std::size_t>(a.tail.id)];
    } else {
      ++p_out[static_cast<std::size_t>(a.tail.id)];
    }
    if (a.head.is_vertex()) {
      ++v_in[static_cast<std::size_t>(a.head.id)];
    } else {
      ++p_in[static_cast<std::size_t>(a.head.id)];
    }
  }
};

}  // namespace

ViolationReport verify(const RoutingProblem& problem, const RoutingSolution& solution) {
  const auto& t = problem.topology();
  const auto& routes = problem.routes();
  const Index idx(t);
  ViolationReport report;
  auto report_violation = [&](Rule rule, int route, std::string entity, std::string detail) {
    report.violations.push_back({rule, route, std::move(entity), std::move(detail)});
  };

  if (solution.assignment.size() != routes.size() || solution.paths.size() != routes.size()) {
    report_violation(Rule::kPathIntegrity, -1, "solution",
                     fmt::format("{} assignments / {} paths for {} routes",
                                 solution.assignment.size(), solution.paths.size(),
                                 routes.size()));
    sort_report(report);
    return report;
  }

  auto known = [&](ArmId id) { return id.valid() && id.index() < idx.n_arms; };

  // Clean per-route arm sets (unknown and duplicate ids reported, then dropped).
  std::vector<std::vector<ArmId>> assigned(routes.size());
  for (std::size_t r = 0; r < routes.size(); ++r) {
    const int rid = routes[r].route_id;
    std::set<ArmId> seen;
    for (auto id : solution.assignment[r]) {
      if (!known(id)) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         "assignment references an unknown arm");
        continue;
      }
      if (!seen.insert(id).second) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         "arm assigned twice to the same route");
        continue;
      }
      assigned[r].push_back(id);
    }
  }

  Flow total(idx.n_vertices, idx.n_ports);
  std::vector<int> side_use(2 * idx.n_vertices, 0);
  std::vector<std::uint8_t> puc_bar(t.pucs().size(), 0), puc_cross(t.pucs().size(), 0);

  for (std::size_t r = 0; r < routes.size(); ++r) {
    const auto& req = routes[r];
    const int rid = req.route_id;
    Flow flow(idx.n_vertices, idx.n_ports);
    double loss = 0;
    for (auto id : assigned[r]) {
      const auto& a = t.arm(id);
      flow.add(a);
      total.add(a);
      loss += problem.loss(id);
      for (int s : idx.side_slots[id.index()]) {
        if (s >= 0) ++side_use[static_cast<std::size_t>(s)];
      }
      (a.kind == ArmKind::kBar ? puc_bar : puc_cross)[a.puc.index()] = 1;
    }

    if (loss > problem.max_route_length() + kEps) {
      report_violation(Rule::kEq1, rid, fmt::format("route{}", rid),
                       fmt::format("loss {} exceeds bound {}", loss, problem.max_route_length()));
    }
    for (std::size_t v = 0; v < idx.n_vertices; ++v) {
      if (flow.v_in[v] != flow.v_out[v]) {
        report_violation(Rule::kEq2, rid, vname(static_cast<int>(v)),
                         fmt::format("inflow {} != outflow {}", flow.v_in[v], flow.v_out[v]));
      }
    }
    (void)flow;
  }

  // Port rules need the totals over all routes.
  std::vector<std::uint8_t> named(idx.n_ports, 0);
  for (const auto& req : routes) {
    named[req.source.index()] = 1;
    named[req.drain.index()] = 1;
  }
  for (std::size_t r = 0; r < routes.size(); ++r) {
    const auto& req = routes[r];
    Flow own(idx.n_vertices, idx.n_ports);
    for (auto id : assigned[r]) own.add(t.arm(id));
    const auto s = req.source.index();
    const auto d = req.drain.index();
    if (own.p_out[s] != 1 || total.p_out[s] != 1 || total.p_in[s] != 0) {
      report_violation(Rule::kEq4, req.route_id, pname(req.source.value),
                       fmt::format("route out {}, total out {}, total in {}", own.p_out[s],
                                   total.p_out[s], total.p_in[s]));
    }
    if (own.p_in[d] != 1 || total.p_in[d] != 1 || total.p_out[d] != 0) {
      report_violation(Rule::kEq5, req.route_id, pname(req.drain.value),
                       fmt::format("route in {}, total in {}, total out {}", own.p_in[d],
                                   total.p_in[d], total.p_out[d]));
    }
  }
  for (std::size_t p = 0; p < idx.n_ports; ++p) {
    if (!named[p] && (total.p_in[p] != 0 || total.p_out[p] != 0)) {
      report_violation(Rule::kEq6, -1, pname(static_cast<int>(p)),
                       fmt::format("unconnected port carries in {} / out {}", total.p_in[p],
                                   total.p_out[p]));
    }
  }

  for (std::size_t v = 0; v < idx.n_vertices; ++v) {
    for (int side = 0; side < 2; ++side) {
      const int used = side_use[2 * v + static_cast<std::size_t>(side)];
      if (used > 1) {
        report_violation(Rule::kEq3, -1, vname(static_cast<int>(v)),
                         fmt::format("side {} carries {} arms", side == 0 ? 'a' : 'b', used));
      }
    }
  }

  // Path integrity: the ordered path is a connected trail of assigned arms,
  // and whatever it leaves out must not be a closed stray cycle. Unbalanced
  // leftovers already show up as flow violations.
  for (std::size_t r = 0; r < routes.size(); ++r) {
    const int rid = routes[r].route_id;
    const auto& path = solution.paths[r];
    const std::set<ArmId> in_assignment(assigned[r].begin(), assigned[r].end());
    std::set<ArmId> on_path;
    bool ok = true;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto id = path[k];
      if (!known(id)) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         "path references an unknown arm");
        ok = false;
        continue;
      }
      if (!on_path.insert(id).second) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         "path repeats an arm");
        ok = false;
      }
      if (!in_assignment.contains(id)) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         "path arm is not in the assignment");
        ok = false;
      }
      if (k > 0 && known(path[k - 1]) && t.arm(path[k - 1]).head != t.arm(id).tail) {
        report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", id.value),
                         fmt::format("path breaks between arm {} and arm {}", path[k - 1].value,
                                     id.value));
        ok = false;
      }
    }
    if (!ok) continue;
    if (path.empty() && !assigned[r].empty()) {
      report_violation(Rule::kPathIntegrity, rid, fmt::format("route{}", rid),
                       "assignment without an ordered path");
      continue;
    }
    std::vector<ArmId> stray;
    for (auto id : assigned[r]) {
      if (!on_path.contains(id)) stray.push_back(id);
    }
    if (stray.empty()) continue;
    Flow extra(idx.n_vertices, idx.n_ports);
    for (auto id : stray) extra.add(t.arm(id));
    if (extra.v_in == extra.v_out && extra.p_in == extra.p_out) {
      report_violation(Rule::kPathIntegrity, rid, fmt::format("arm{}", stray.front().value),
                       fmt::format("{} assigned arms form a cycle off the path", stray.size()));
    }
  }

  // PUC states: no PUC in both states, and the reported states must match
  // the assigned arms.
  std::vector<PucState> derived(t.pucs().size(), PucState::kUnused);
  for (std::size_t p = 0; p < t.pucs().size(); ++p) {
    // Every bar arm shares a terminal with every cross arm of its PUC, so a
    // mixed PUC already breaks Eq3 at a vertex or a port rule. No state can
    // be derived for it; the claimed one is not checked.
    if (puc_bar[p] && puc_cross[p]) continue;
    derived[p] = puc_bar[p] ? PucState::kBar : puc_cross[p] ? PucState::kCross : PucState::kUnused;
    if (p < solution.puc_states.size() && solution.puc_states[p] != derived[p]) {
      report_violation(Rule::kStateConflict, -1, fmt::format("puc{}", p),
                       fmt::format("reported {} but arms imply {}",
                                   to_string(solution.puc_states[p]), to_string(derived[p])));
    }
  }
  if (solution.puc_states.size() != t.pucs().size()) {
    report_violation(Rule::kStateConflict, -1, "puc_states",
                     fmt::format("{} states for {} pucs", solution.puc_states.size(),
                                 t.pucs().size()));
  }

  sort_report(report);
  return report;
}

ViolationReport verify_matching_semantics(const RoutingProblem& problem,
                                          const RoutingSolution& solution) {
  const auto& t = problem.topology();
  ViolationReport report;
  const auto n = std::min(problem.routes().size(), solution.paths.size());
  for (std::size_t r = 0; r < n; ++r) {
    const auto& req = problem.routes()[r];
    std::set<int> foreign;
    for (auto id : solution.paths[r]) {
      if (!t.contains(id)) continue;
      const auto& a = t.arm(id);
      for (auto e : {a.tail, a.head}) {
        if (e.is_port() && e.as_port() != req.source && e.as_port() != req.drain) {
          foreign.insert(e.id);
        }
      }
    }
    for (int p : foreign) {
      report.violations.push_back({Rule::kEq6, req.route_id, pname(p),
                                   "path leaves and re-enters the device through this port"});
    }
  }
  sort_report(report);
  return report;
}

}  // namespace pipmesh
