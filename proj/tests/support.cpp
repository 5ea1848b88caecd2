#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "pipmesh/brute_force.hpp"

namespace testsupport {

GeometricCounts geometric_counts(int height, int width) {
  using Key = std::pair<long long, long long>;
  auto key = [](double x, double y) { return Key{std::llround(x * 1000), std::llround(y * 1000)}; };
  const double pi = std::acos(-1.0);
  std::set<std::pair<Key, Key>> edges;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double cx = std::sqrt(3.0) * (c + 0.5 * (r & 1));
      const double cy = 1.5 * r;
      std::vector<Key> corners;
      for (int k = 0; k < 6; ++k) {
        const double a = pi / 6 + k * pi / 3;
        corners.push_back(key(cx + std::cos(a), cy + std::sin(a)));
      }
      for (int k = 0; k < 6; ++k) {
        auto a = corners[static_cast<std::size_t>(k)];
        auto b = corners[static_cast<std::size_t>((k + 1) % 6)];
        edges.insert(std::minmax(a, b));
      }
    }
  }
  std::map<Key, int> degree;
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  GeometricCounts out;
  out.pucs = static_cast<int>(edges.size());
  for (const auto& [k, d] : degree) {
    // Each PUC end carries two lanes; neighbouring ends fuse pairwise
    // around the corner, the rest face outwards.
    if (d == 3) out.vertices += 3;
    if (d == 2) {
      out.vertices += 1;
      out.ports += 2;
    }
    if (d == 1) ++out.degree1_corners;
  }
  return out;
}

std::shared_ptr<const MeshTopology> hex(int height, int width) {
  return std::make_shared<const MeshTopology>(build_hex_mesh(height, width));
}

std::optional<int> bfs_shortest(const MeshTopology& t, PortId source, PortId drain) {
  std::map<Endpoint, int> dist;
  std::deque<Endpoint> queue{Endpoint::port(source)};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const auto at = queue.front();
    queue.pop_front();
    if (at == Endpoint::port(drain)) return dist[at];
    if (at.is_port() && at.as_port() != source) continue;
    for (const auto& arm : t.arms()) {
      if (arm.tail != at || dist.contains(arm.head)) continue;
      dist[arm.head] = dist[at] + 1;
      queue.push_back(arm.head);
    }
  }
  return std::nullopt;
}

ArmId arm_between(const MeshTopology& t, PucId puc, TerminalSlot from, TerminalSlot to) {
  const auto& p = t.puc(puc);
  for (const auto& arm : t.arms()) {
    if (arm.puc == puc && arm.tail == p.terminal(from) && arm.head == p.terminal(to)) return arm.id;
  }
  return {};
}

std::vector<PucState> lenient_states(const MeshTopology& t,
                                     const std::vector<std::vector<ArmId>>& assignment) {
  std::vector<PucState> s(t.pucs().size(), PucState::kUnused);
  for (const auto& arms : assignment) {
    for (auto id : arms) {
      const auto& a = t.arm(id);
      auto& st = s[a.puc.index()];
      if (a.kind == ArmKind::kBar) {
        st = PucState::kBar;
      } else if (st == PucState::kUnused) {
        st = PucState::kCross;
      }
    }
  }
  return s;
}

RoutingSolution solution_from_paths(const MeshTopology& t, std::vector<std::vector<ArmId>> paths) {
  RoutingSolution s;
  for (auto& p : paths) {
    auto set = p;
    std::sort(set.begin(), set.end());
    s.objective += static_cast<double>(set.size());
    s.assignment.push_back(std::move(set));
  }
  s.paths = std::move(paths);
  s.puc_states = lenient_states(t, s.assignment);
  return s;
}

namespace {

std::set<Endpoint> touched(const MeshTopology& t, const RoutingSolution& s) {
  std::set<Endpoint> out;
  for (const auto& arms : s.assignment) {
    for (auto id : arms) {
      out.insert(t.arm(id).tail);
      out.insert(t.arm(id).head);
    }
  }
  return out;
}

void add_stray(const MeshTopology& t, RoutingSolution& s, ArmId id) {
  auto& a = s.assignment[0];
  a.insert(std::lower_bound(a.begin(), a.end(), id), id);
  s.puc_states = lenient_states(t, s.assignment);
}

}  // namespace

std::optional<Injection> inject(Rule rule, const RoutingProblem& problem,
                                const RoutingSolution& solution) {
  const auto& t = problem.topology();
  auto s = solution;
  const auto n_routes = problem.routes().size();
  switch (rule) {
    case Rule::kEq1: {
      double worst = 0;
      for (const auto& arms : s.assignment) {
        double loss = 0;
        for (auto id : arms) loss += problem.loss(id);
        worst = std::max(worst, loss);
      }
      if (worst <= 0) return std::nullopt;
      return Injection{"lower the length bound", rule, problem.with_max_route_length(worst - 0.5), s};
    }
    case Rule::kEq2: {
      if (n_routes == 0) return std::nullopt;
      const auto used = touched(t, s);
      for (const auto& arm : t.arms()) {
        if (s.puc_states[arm.puc.index()] != PucState::kUnused) continue;
        if (!arm.tail.is_vertex() || !arm.head.is_vertex()) continue;
        if (used.contains(arm.tail) || used.contains(arm.head)) continue;
        add_stray(t, s, arm.id);
        return Injection{"dangling arm between idle vertices", rule, problem, s};
      }
      return std::nullopt;
    }
    case Rule::kEq3: {
      // Replace one route by a trail that turns around at a vertex.
      for (std::size_t r = 0; r < n_routes; ++r) {
        for (const auto& trail :
             enumerate_route_trails(problem, problem.routes()[r], static_cast<int>(t.arms().size()))) {
          auto candidate = s;
          candidate.paths[r] = trail;
          candidate.assignment[r] = trail;
          std::sort(candidate.assignment[r].begin(), candidate.assignment[r].end());
          candidate.puc_states = lenient_states(t, candidate.assignment);
          if (verify(problem, candidate).rules() == std::vector<Rule>{Rule::kEq3}) {
            return Injection{"trail reusing a vertex side", rule, problem, candidate};
          }
        }
      }
      return std::nullopt;
    }
    case Rule::kEq4:
    case Rule::kEq5: {
      if (n_routes < 2) return std::nullopt;
      auto routes = problem.routes();
      if (rule == Rule::kEq4) {
        std::swap(routes[0].source, routes[1].source);
      } else {
        std::swap(routes[0].drain, routes[1].drain);
      }
      return Injection{rule == Rule::kEq4 ? "swap sources" : "swap drains", rule,
                       problem.with_routes(routes), s};
    }
    case Rule::kEq6: {
      if (n_routes == 0) return std::nullopt;
      std::set<PortId> named;
      for (const auto& r : problem.routes()) {
        named.insert(r.source);
        named.insert(r.drain);
      }
      for (const auto& arm : t.arms()) {
        if (s.puc_states[arm.puc.index()] != PucState::kUnused) continue;
        if (!arm.tail.is_port() || !arm.head.is_port()) continue;
        if (named.contains(arm.tail.as_port()) || named.contains(arm.head.as_port())) continue;
        add_stray(t, s, arm.id);
        return Injection{"light between two idle ports", rule, problem, s};
      }
      return std::nullopt;
    }
    case Rule::kPathIntegrity: {
      for (auto& path : s.paths) {
        if (path.size() < 2) continue;
        std::swap(path[0], path[1]);
        return Injection{"reorder path", rule, problem, s};
      }
      return std::nullopt;
    }
    case Rule::kStateConflict: {
      for (auto& st : s.puc_states) {
        if (st == PucState::kUnused) continue;
        st = st == PucState::kBar ? PucState::kCross : PucState::kBar;
        return Injection{"misreport a PUC state", rule, problem, s};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

InjectionBase injection_base() {
  auto topology = hex(2, 2);
  const auto ports = enumerate_ports(*topology);
  // First two-route instance (in port order) whose brute-force optimum
  // leaves room for all eight injectors.
  for (std::size_t a = 0; a < ports.size(); ++a) {
    for (std::size_t b = a + 1; b < ports.size(); ++b) {
      for (std::size_t c = b + 1; c < ports.size(); ++c) {
        for (std::size_t d = c + 1; d < ports.size(); ++d) {
          RoutingProblem p(topology, {{0, ports[a], ports[c]}, {1, ports[b], ports[d]}});
          auto out = brute_force_solve(p, static_cast<int>(p.max_route_length()));
          if (!out.optimal()) continue;
          const auto& s = *out.solution;
          bool all = true;
          for (auto rule : kAllRules) {
            if (!inject(rule, p, s)) {
              all = false;
              break;
            }
          }
          if (all) return {p, s};
        }
      }
    }
  }
  throw std::runtime_error("no injection base instance on 2x2");
}

namespace {

// Terminal slots of `puc` as seen from its end at vertex `v`.
struct EndView {
  PucId puc;
  Endpoint near_top;    // v itself
  Endpoint far_top;     // vertex at the other end
  Endpoint far_bottom;  // outer lane at the other end
};

EndView view(const MeshTopology& t, PucId puc, Endpoint v) {
  const auto& p = t.puc(puc);
  if (p.terminal(TerminalSlot::kLeftTop) == v) {
    return {puc, v, p.terminal(TerminalSlot::kRightTop), p.terminal(TerminalSlot::kRightBottom)};
  }
  if (p.terminal(TerminalSlot::kRightTop) == v) {
    return {puc, v, p.terminal(TerminalSlot::kLeftTop), p.terminal(TerminalSlot::kLeftBottom)};
  }
  throw std::logic_error("vertex is not a top terminal of this puc");
}

ArmId arm_from_to(const MeshTopology& t, PucId puc, Endpoint tail, Endpoint head) {
  for (auto id : t.arms_of(puc)) {
    if (t.arm(id).tail == tail && t.arm(id).head == head) return id;
  }
  throw std::logic_error("no such arm");
}

PucId other_side(const MeshTopology& t, VertexId v, PucId puc) {
  return t.side_puc(v, 0) == puc ? t.side_puc(v, 1) : t.side_puc(v, 0);
}

}  // namespace

std::vector<WorkedExample> worked_examples() {
  auto t = hex(1, 1);
  std::vector<WorkedExample> out;
  const VertexId v0{0};
  const auto v = Endpoint::vertex(v0);
  const auto a = view(*t, t->side_puc(v0, 0), v);  // PUC on one side of v
  const auto b = view(*t, t->side_puc(v0, 1), v);  // PUC on the other side
  const auto u = a.far_top;
  const auto w = b.far_top;
  const auto z = view(*t, other_side(*t, u.as_vertex(), a.puc), u);
  const auto c = view(*t, other_side(*t, w.as_vertex(), b.puc), w);

  auto make = [&](std::string name, Rule rule, std::vector<std::vector<ArmId>> paths) {
    std::vector<RouteRequest> routes;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      routes.push_back({static_cast<int>(i), t->arm(paths[i].front()).tail.as_port(),
                        t->arm(paths[i].back()).head.as_port()});
    }
    RoutingProblem p(t, routes);
    out.push_back({std::move(name), rule, p, solution_from_paths(*t, std::move(paths))});
  };

  // In from the neighbour, along the top lane of A into v, then back out
  // through A's cross arm: both arms sit on A's side of v.
  make("u-turn at one vertex", Rule::kEq3,
       {{arm_from_to(*t, z.puc, z.far_bottom, u), arm_from_to(*t, a.puc, u, v),
         arm_from_to(*t, a.puc, v, a.far_bottom)}});

  // Route 0 enters v from A and leaves into B; route 1 enters from B and
  // leaves into A.
  make("two routes through one vertex", Rule::kEq3,
       {{arm_from_to(*t, a.puc, a.far_bottom, v), arm_from_to(*t, b.puc, v, w),
         arm_from_to(*t, c.puc, w, c.far_bottom)},
        {arm_from_to(*t, b.puc, b.far_bottom, v), arm_from_to(*t, a.puc, v, u),
         arm_from_to(*t, z.puc, u, z.far_bottom)}});

  // Along A's outer lane into the idle port at its far end, then back into
  // the mesh through A's cross arm.
  const auto near_bottom = [&](const EndView& e) {
    const auto& p = t->puc(e.puc);
    return p.terminal(TerminalSlot::kLeftTop) == e.near_top ? p.terminal(TerminalSlot::kLeftBottom)
                                                            : p.terminal(TerminalSlot::kRightBottom);
  };
  make("pass through an idle port", Rule::kEq6,
       {{arm_from_to(*t, a.puc, near_bottom(a), a.far_bottom),
         arm_from_to(*t, a.puc, a.far_bottom, v), arm_from_to(*t, b.puc, v, w),
         arm_from_to(*t, c.puc, w, c.far_bottom)}});
  return out;
}

}  // namespace testsupport
