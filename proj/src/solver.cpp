#include "pipmesh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "pipmesh/brute_force.hpp"
#include "transit_graph.hpp"

namespace pipmesh {

namespace {

using Clock = std::chrono::steady_clock;
using detail::TransitGraph;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

struct Plan {
  std::vector<ArmId> arms;
  std::vector<int> nodes;  // transit nodes in path order
  double cost = 0;
};
using PlanPtr = std::shared_ptr<const Plan>;

struct RouteContext {
  PortId source;
  PortId drain;
  // Unconstrained cheapest cost / lightest loss from each transit node to
  // the drain; both are admissible for any exclusion set.
  std::vector<double> to_drain_cost;
  std::vector<double> to_drain_loss;
};

// Reverse Dijkstra from the drain over one arm weight.
std::vector<double> distances_to_drain(const TransitGraph& g, PortId drain,
                                       const std::vector<double>& weight) {
  std::vector<double> dist(static_cast<std::size_t>(g.node_count()), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& e : g.into_port(drain)) {
    if (TransitGraph::is_port(e.to)) continue;
    auto& d = dist[static_cast<std::size_t>(e.to)];
    const double w = weight[e.arm.index()];
    if (w < d) {
      d = w;
      pq.emplace(w, e.to);
    }
  }
  while (!pq.empty()) {
    auto [d, n] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(n)]) continue;
    for (const auto& e : g.in(n)) {
      if (TransitGraph::is_port(e.to)) continue;
      const double nd = d + weight[e.arm.index()];
      auto& cur = dist[static_cast<std::size_t>(e.to)];
      if (nd < cur) {
        cur = nd;
        pq.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

// Cheapest path for one route that avoids the excluded transit nodes and
// stays within the loss bound. Label-setting A* over (cost, loss) with
// Pareto dominance, so it is exact for arbitrary nonnegative weights.
class PathFinder {
 public:
  PathFinder(const TransitGraph& graph, const RoutingProblem& problem)
      : graph_(graph), problem_(problem), settled_(static_cast<std::size_t>(graph.node_count())) {}

  std::optional<Plan> find(const RouteContext& route, const std::vector<std::uint8_t>& excluded) {
    labels_.clear();
    while (!queue_.empty()) queue_.pop();
    for (int n : touched_) settled_[static_cast<std::size_t>(n)].clear();
    touched_.clear();
    const double bound = problem_.max_route_length() + kEps;

    auto push = [&](int to, ArmId arm, int parent, double cost, double loss) {
      cost += problem_.cost(arm);
      loss += problem_.loss(arm);
      if (TransitGraph::is_port(to)) {
        if (TransitGraph::port_of(to) != route.drain || loss > bound) return;
        labels_.push_back({kGoal, cost, loss, parent, arm});
        queue_.push({cost, loss, static_cast<int>(labels_.size()) - 1});
        return;
      }
      const auto idx = static_cast<std::size_t>(to);
      if (excluded[idx]) return;
      const double h = route.to_drain_cost[idx];
      if (h == kInf || loss + route.to_drain_loss[idx] > bound) return;
      labels_.push_back({to, cost, loss, parent, arm});
      queue_.push({cost + h, loss, static_cast<int>(labels_.size()) - 1});
    };

    for (const auto& e : graph_.from_port(route.source)) push(e.to, e.arm, -1, 0.0, 0.0);

    while (!queue_.empty()) {
      const auto item = queue_.top();
      queue_.pop();
      const Label label = labels_[static_cast<std::size_t>(item.label)];
      if (label.node == kGoal) return reconstruct(item.label);
      auto& seen = settled_[static_cast<std::size_t>(label.node)];
      bool dominated = false;
      for (auto [c, w] : seen) {
        if (c <= label.cost && w <= label.loss) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      if (seen.empty()) touched_.push_back(label.node);
      seen.emplace_back(label.cost, label.loss);
      for (const auto& e : graph_.out(label.node)) {
        push(e.to, e.arm, item.label, label.cost, label.loss);
      }
    }
    return std::nullopt;
  }

 private:
  static constexpr int kGoal = -1;

  struct Label {
    int node;
    double cost;
    double loss;
    int parent;
    ArmId arm;
  };
  struct QueueItem {
    double priority;
    double loss;
    int label;
    bool operator>(const QueueItem& o) const {
      if (priority != o.priority) return priority > o.priority;
      if (loss != o.loss) return loss > o.loss;
      return label > o.label;
    }
  };

  Plan reconstruct(int idx) const {
    Plan plan;
    plan.cost = labels_[static_cast<std::size_t>(idx)].cost;
    for (int i = idx; i >= 0; i = labels_[static_cast<std::size_t>(i)].parent) {
      const auto& l = labels_[static_cast<std::size_t>(i)];
      plan.arms.push_back(l.arm);
      if (l.node != kGoal) plan.nodes.push_back(l.node);
    }
    std::reverse(plan.arms.begin(), plan.arms.end());
    std::reverse(plan.nodes.begin(), plan.nodes.end());
    return plan;
  }

  const TransitGraph& graph_;
  const RoutingProblem& problem_;
  std::vector<Label> labels_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue_;
  std::vector<std::vector<std::pair<double, double>>> settled_;
  std::vector<int> touched_;
};

struct Conflict {
  int vertex = -1;
  int first = -1;   // route indices; equal for a route meeting itself
  int second = -1;
};

struct Branch {
  int route = -1;
  std::array<int, 2> exclude{-1, -1};
};

// Both ways a conflict can be resolved: one of the two routes gives up the
// vertex, or a self-crossing route gives up one of its two passes.
std::array<Branch, 2> branches_for(const Conflict& c) {
  const int a = TransitGraph::node(VertexId{c.vertex}, 0);
  const int b = TransitGraph::node(VertexId{c.vertex}, 1);
  if (c.first == c.second) return {Branch{c.first, {a, -1}}, Branch{c.first, {b, -1}}};
  return {Branch{c.first, {a, b}}, Branch{c.second, {a, b}}};
}

class BranchAndBound {
 public:
  BranchAndBound(const RoutingProblem& problem, const BranchAndBoundOptions& options,
                 std::chrono::milliseconds budget)
      : problem_(problem),
        options_(options),
        budget_(budget),
        deadline_(Clock::now() + budget),
        graph_(problem.topology()),
        finder_(graph_, problem),
        n_routes_(static_cast<int>(problem.routes().size())),
        vertex_user_(problem.topology().vertices().size(), -1) {}

  SolveOutcome run() {
    if (n_routes_ == 0) return SolveOutcome::make_optimal(make_solution(problem_, {}));
    if (options_.flow_pruning && !flow_relaxation_feasible(problem_)) {
      return finish(SolveOutcome::make_infeasible());
    }

    for (const auto& r : problem_.routes()) {
      routes_.push_back({r.source, r.drain,
                         distances_to_drain(graph_, r.drain, problem_.cost_weights()),
                         distances_to_drain(graph_, r.drain, problem_.loss_weights())});
    }
    const std::vector<std::uint8_t> none(static_cast<std::size_t>(graph_.node_count()), 0);
    double total = 0;
    for (int r = 0; r < n_routes_; ++r) {
      auto plan = finder_.find(routes_[static_cast<std::size_t>(r)], none);
      ++stats_.low_level_searches;
      if (!plan) return finish(SolveOutcome::make_infeasible());
      total += plan->cost;
      root_plans_.push_back(std::make_shared<const Plan>(std::move(*plan)));
    }
    nodes_.push_back({-1, -1, {-1, -1}, nullptr, total, count_conflicts(root_plans_), 0});
    open_.push({total, nodes_[0].conflicts, 0});
    ++stats_.nodes_generated;

    while (!open_.empty()) {
      if (Clock::now() >= deadline_ || open_.size() > options_.max_open_nodes) {
        return finish(SolveOutcome::make_timeout(budget_));
      }
      const int idx = open_.top().node;
      open_.pop();
      ++stats_.nodes_expanded;
      auto plans = collect_plans(idx);
      auto conflicts = find_conflicts(plans, static_cast<std::size_t>(options_.conflict_lookahead));
      if (conflicts.empty()) return finish(SolveOutcome::make_optimal(to_solution(plans)));
      expand(idx, plans, conflicts);
    }
    return finish(SolveOutcome::make_infeasible());
  }

 private:
  struct Node {
    int parent;
    int route;                  // route replanned at this node
    std::array<int, 2> exclude; // transit nodes newly excluded for `route`
    PlanPtr plan;
    double cost;
    int conflicts;
    int depth;
  };
  struct OpenItem {
    double cost;
    int conflicts;
    int node;
    bool operator<(const OpenItem& o) const {  // max-heap inverted
      if (cost != o.cost) return cost > o.cost;
      if (conflicts != o.conflicts) return conflicts > o.conflicts;
      return node > o.node;
    }
  };
  struct Child {
    Branch branch;
    PlanPtr plan;  // null when the route has no path left
    double cost = kInf;
  };

  SolveOutcome finish(SolveOutcome outcome) const {
    outcome.stats = stats_;
    if (outcome.status == SolveStatus::kTimeout) outcome.budget = budget_;
    return outcome;
  }

  std::vector<PlanPtr> collect_plans(int idx) const {
    std::vector<PlanPtr> plans(static_cast<std::size_t>(n_routes_));
    for (int i = idx; i > 0; i = nodes_[static_cast<std::size_t>(i)].parent) {
      const auto& n = nodes_[static_cast<std::size_t>(i)];
      auto& slot = plans[static_cast<std::size_t>(n.route)];
      if (!slot) slot = n.plan;
    }
    for (int r = 0; r < n_routes_; ++r) {
      auto& slot = plans[static_cast<std::size_t>(r)];
      if (!slot) slot = root_plans_[static_cast<std::size_t>(r)];
    }
    return plans;
  }

  std::vector<std::uint8_t> exclusions(int idx, int route, const Branch& extra) const {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(graph_.node_count()), 0);
    for (int i = idx; i > 0; i = nodes_[static_cast<std::size_t>(i)].parent) {
      const auto& n = nodes_[static_cast<std::size_t>(i)];
      if (n.route != route) continue;
      for (int x : n.exclude) {
        if (x >= 0) mask[static_cast<std::size_t>(x)] = 1;
      }
    }
    for (int x : extra.exclude) {
      if (x >= 0) mask[static_cast<std::size_t>(x)] = 1;
    }
    return mask;
  }

  // Conflicts in (route, path position) order; stops after `limit` when
  // limit > 0.
  std::vector<Conflict> find_conflicts(const std::vector<PlanPtr>& plans, std::size_t limit) {
    std::vector<Conflict> out;
    std::fill(vertex_user_.begin(), vertex_user_.end(), -1);
    for (int r = 0; r < n_routes_; ++r) {
      for (int n : plans[static_cast<std::size_t>(r)]->nodes) {
        const auto v = static_cast<std::size_t>(n / 2);
        if (vertex_user_[v] < 0) {
          vertex_user_[v] = r;
        } else {
          out.push_back({static_cast<int>(v), vertex_user_[v], r});
          if (limit > 0 && out.size() >= limit) return out;
        }
      }
    }
    return out;
  }

  int count_conflicts(const std::vector<PlanPtr>& plans) {
    return static_cast<int>(find_conflicts(plans, 0).size());
  }

  Child replan(int idx, const Node& node, const std::vector<PlanPtr>& plans, const Branch& b) {
    Child child{b, nullptr, kInf};
    ++stats_.low_level_searches;
    auto plan = finder_.find(routes_[static_cast<std::size_t>(b.route)], exclusions(idx, b.route, b));
    if (!plan) return child;
    child.cost = node.cost - plans[static_cast<std::size_t>(b.route)]->cost + plan->cost;
    child.plan = std::make_shared<const Plan>(std::move(*plan));
    return child;
  }

  void expand(int idx, std::vector<PlanPtr>& plans, const std::vector<Conflict>& conflicts) {
    const Node node = nodes_[static_cast<std::size_t>(idx)];

    // Score candidate conflicts by how much both resolutions raise the
    // bound; a conflict neither resolution can satisfy closes the node.
    std::array<Child, 2> best;
    double best_min = -1;
    double best_max = -1;
    for (const auto& c : conflicts) {
      const auto bs = branches_for(c);
      std::array<Child, 2> children{replan(idx, node, plans, bs[0]), replan(idx, node, plans, bs[1])};
      if (!children[0].plan && !children[1].plan) return;
      const double lo = std::min(children[0].cost, children[1].cost) - node.cost;
      const double hi = std::max(children[0].cost, children[1].cost) - node.cost;
      if (best_min < 0 || lo > best_min + kEps || (std::abs(lo - best_min) <= kEps && hi > best_max + kEps)) {
        best = children;
        best_min = lo;
        best_max = hi;
      }
    }

    for (auto& child : best) {
      if (!child.plan) continue;
      const auto r = static_cast<std::size_t>(child.branch.route);
      auto saved = plans[r];
      plans[r] = child.plan;
      const int n_conflicts = count_conflicts(plans);
      plans[r] = saved;
      nodes_.push_back({idx, child.branch.route, child.branch.exclude, child.plan, child.cost,
                        n_conflicts, node.depth + 1});
      const int id = static_cast<int>(nodes_.size()) - 1;
      open_.push({child.cost, n_conflicts, id});
      ++stats_.nodes_generated;
    }
  }

  RoutingSolution to_solution(const std::vector<PlanPtr>& plans) const {
    std::vector<std::vector<ArmId>> assignment;
    for (const auto& p : plans) assignment.push_back(p->arms);
    return make_solution(problem_, assignment);
  }

  const RoutingProblem& problem_;
  BranchAndBoundOptions options_;
  std::chrono::milliseconds budget_;
  Clock::time_point deadline_;
  TransitGraph graph_;
  PathFinder finder_;
  int n_routes_;
  std::vector<RouteContext> routes_;
  std::vector<PlanPtr> root_plans_;
  std::vector<Node> nodes_;
  std::priority_queue<OpenItem> open_;
  std::vector<int> vertex_user_;
  SolveStats stats_;
};

}  // namespace

bool flow_relaxation_feasible(const RoutingProblem& problem) {
  using namespace boost;
  using Traits = adjacency_list_traits<vecS, vecS, directedS>;
  using Graph = adjacency_list<
      vecS, vecS, directedS, no_property,
      property<edge_capacity_t, long,
               property<edge_residual_capacity_t, long,
                        property<edge_reverse_t, Traits::edge_descriptor>>>>;

  const auto& t = problem.topology();
  const auto n_vertices = t.vertices().size();
  const std::size_t source = 0;
  const std::size_t sink = 1;
  auto vertex_in = [](std::size_t v) { return 2 + 2 * v; };
  auto vertex_out = [](std::size_t v) { return 3 + 2 * v; };
  auto port_node = [&](std::size_t p) { return 2 + 2 * n_vertices + p; };

  Graph g(2 + 2 * n_vertices + t.ports().size());
  auto capacity = get(edge_capacity, g);
  auto reverse = get(edge_reverse, g);
  auto add = [&](std::size_t from, std::size_t to, long cap) {
    auto e = add_edge(from, to, g).first;
    auto r = add_edge(to, from, g).first;
    capacity[e] = cap;
    capacity[r] = 0;
    reverse[e] = r;
    reverse[r] = e;
  };

  std::vector<std::uint8_t> is_source(t.ports().size(), 0), is_drain(t.ports().size(), 0);
  for (const auto& r : problem.routes()) {
    is_source[r.source.index()] = 1;
    is_drain[r.drain.index()] = 1;
    add(source, port_node(r.source.index()), 1);
    add(port_node(r.drain.index()), sink, 1);
  }
  for (std::size_t v = 0; v < n_vertices; ++v) add(vertex_in(v), vertex_out(v), 1);
  for (const auto& a : t.arms()) {
    if (a.tail.is_port() && !is_source[static_cast<std::size_t>(a.tail.id)]) continue;
    if (a.head.is_port() && !is_drain[static_cast<std::size_t>(a.head.id)]) continue;
    const auto from = a.tail.is_vertex() ? vertex_out(static_cast<std::size_t>(a.tail.id))
                                         : port_node(static_cast<std::size_t>(a.tail.id));
    const auto to = a.head.is_vertex() ? vertex_in(static_cast<std::size_t>(a.head.id))
                                       : port_node(static_cast<std::size_t>(a.head.id));
    add(from, to, 1);
  }
  const long flow = push_relabel_max_flow(g, source, sink);
  return flow >= static_cast<long>(problem.routes().size());
}

SolveOutcome BranchAndBoundSolver::solve(const RoutingProblem& problem,
                                         std::chrono::milliseconds budget) const {
  return BranchAndBound(problem, options_, budget).run();
}

SolveOutcome BruteForceSolver::solve(const RoutingProblem& problem,
                                     std::chrono::milliseconds) const {
  return brute_force_solve(problem, cap_);
}

std::unique_ptr<SolverBackend> make_backend(std::string_view name) {
  if (name == "bnb") return std::make_unique<BranchAndBoundSolver>();
  if (name == "brute") return std::make_unique<BruteForceSolver>(64);
  throw std::invalid_argument("unknown solver backend '" + std::string(name) + "'");
}

std::vector<std::string> backend_names() { return {"bnb", "brute"}; }

SolveOutcome solve(const RoutingProblem& problem, std::chrono::milliseconds budget) {
  return BranchAndBoundSolver().solve(problem, budget);
}

}  // namespace pipmesh
