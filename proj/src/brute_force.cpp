#include "pipmesh/brute_force.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace pipmesh {

namespace {

constexpr double kEps = 1e-9;

// (vertex, side) slots touched by a set of arms, read straight off the
// vertex side lists.
class SideIndex {
 public:
  explicit SideIndex(const MeshTopology& t) : slot_of_(t.arms().size(), {-1, -1}) {
    for (const auto& v : t.vertices()) {
      for (auto id : v.side_a) assign(id, 2 * v.id.value);
      for (auto id : v.side_b) assign(id, 2 * v.id.value + 1);
    }
    n_slots_ = 2 * t.vertices().size();
  }

  std::size_t slot_count() const { return n_slots_; }

  // Returns false if some slot would be used more than once.
  bool add(const std::vector<ArmId>& arms, std::vector<std::uint8_t>& used) const {
    std::vector<int> taken;
    for (auto id : arms) {
      for (int s : slot_of_[id.index()]) {
        if (s < 0) continue;
        if (used[static_cast<std::size_t>(s)]) {
          for (int t : taken) used[static_cast<std::size_t>(t)] = 0;
          return false;
        }
        used[static_cast<std::size_t>(s)] = 1;
        taken.push_back(s);
      }
    }
    return true;
  }

  void remove(const std::vector<ArmId>& arms, std::vector<std::uint8_t>& used) const {
    for (auto id : arms) {
      for (int s : slot_of_[id.index()]) {
        if (s >= 0) used[static_cast<std::size_t>(s)] = 0;
      }
    }
  }

 private:
  void assign(ArmId id, int slot) {
    auto& s = slot_of_[id.index()];
    (s[0] < 0 ? s[0] : s[1]) = slot;
  }

  std::vector<std::array<int, 2>> slot_of_;
  std::size_t n_slots_ = 0;
};

struct Candidate {
  std::vector<ArmId> arms;
  double cost = 0;
};

class TrailEnumerator {
 public:
  TrailEnumerator(const RoutingProblem& problem, const RouteRequest& route, int cap)
      : problem_(problem),
        t_(problem.topology()),
        route_(route),
        cap_(cap),
        in_use_(t_.arms().size(), 0) {}

  std::vector<std::vector<ArmId>> run() {
    dfs(Endpoint::port(route_.source), 0.0);
    return std::move(out_);
  }

 private:
  void dfs(Endpoint at, double loss) {
    if (static_cast<int>(trail_.size()) >= cap_) return;
    for (auto id : t_.out_arms(at)) {
      if (in_use_[id.index()]) continue;
      const double next_loss = loss + problem_.loss(id);
      if (next_loss > problem_.max_route_length() + kEps) continue;
      const auto head = t_.arm(id).head;
      trail_.push_back(id);
      in_use_[id.index()] = 1;
      if (head.is_port()) {
        if (head.as_port() == route_.drain) out_.push_back(trail_);
      } else {
        dfs(head, next_loss);
      }
      in_use_[id.index()] = 0;
      trail_.pop_back();
    }
  }

  const RoutingProblem& problem_;
  const MeshTopology& t_;
  RouteRequest route_;
  int cap_;
  std::vector<std::uint8_t> in_use_;
  std::vector<ArmId> trail_;
  std::vector<std::vector<ArmId>> out_;
};

}  // namespace

std::vector<std::vector<ArmId>> enumerate_route_trails(const RoutingProblem& problem,
                                                       const RouteRequest& route,
                                                       int path_length_cap) {
  return TrailEnumerator(problem, route, path_length_cap).run();
}

SolveOutcome brute_force_solve(const RoutingProblem& problem, int path_length_cap) {
  const auto& routes = problem.routes();
  if (routes.empty()) return SolveOutcome::make_optimal(make_solution(problem, {}));

  const SideIndex sides(problem.topology());
  std::vector<std::uint8_t> used(sides.slot_count(), 0);

  std::vector<std::vector<Candidate>> candidates(routes.size());
  for (std::size_t r = 0; r < routes.size(); ++r) {
    for (auto& trail : enumerate_route_trails(problem, routes[r], path_length_cap)) {
      if (!sides.add(trail, used)) continue;
      sides.remove(trail, used);
      double cost = 0;
      for (auto id : trail) cost += problem.cost(id);
      candidates[r].push_back({std::move(trail), cost});
    }
    if (candidates[r].empty()) return SolveOutcome::make_infeasible();
    std::stable_sort(candidates[r].begin(), candidates[r].end(),
                     [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
  }

  std::vector<std::size_t> order(routes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].size() < candidates[b].size();
  });
  // suffix_min[k]: cheapest possible cost of routes order[k..].
  std::vector<double> suffix_min(routes.size() + 1, 0.0);
  for (std::size_t k = routes.size(); k-- > 0;) {
    suffix_min[k] = suffix_min[k + 1] + candidates[order[k]].front().cost;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<const Candidate*> chosen(routes.size(), nullptr);
  std::vector<const Candidate*> best_choice;

  auto search = [&](auto&& self, std::size_t k, double cost) -> void {
    if (k == routes.size()) {
      if (cost < best) {
        best = cost;
        best_choice = chosen;
      }
      return;
    }
    for (const auto& c : candidates[order[k]]) {
      if (cost + c.cost + suffix_min[k + 1] >= best) break;
      if (!sides.add(c.arms, used)) continue;
      chosen[order[k]] = &c;
      self(self, k + 1, cost + c.cost);
      sides.remove(c.arms, used);
    }
  };
  search(search, 0, 0.0);

  if (best_choice.empty()) return SolveOutcome::make_infeasible();
  std::vector<std::vector<ArmId>> assignment;
  for (const auto* c : best_choice) assignment.push_back(c->arms);
  return SolveOutcome::make_optimal(make_solution(problem, assignment));
}

}  // namespace pipmesh
