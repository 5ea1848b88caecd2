#include "pipmesh/rotor.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "pipmesh/solver.hpp"

namespace pipmesh {

std::vector<Matching> generate_rotor_matchings(int n) {
  if (n < 2) throw std::invalid_argument(fmt::format("rotor radix must be >= 2, got {}", n));
  std::vector<Matching> out;
  for (int k = 1; k < n; ++k) {
    Matching m{k, {}};
    for (int i = 0; i < n; ++i) m.pairs.emplace_back(i, (i + k) % n);
    out.push_back(std::move(m));
  }
  return out;
}

const char* to_string(PlacementPolicy policy) {
  return policy == PlacementPolicy::kSpread ? "spread" : "corners";
}

PlacementPolicy parse_policy(std::string_view text) {
  if (text == "spread") return PlacementPolicy::kSpread;
  if (text == "corners") return PlacementPolicy::kCorners;
  throw std::invalid_argument(fmt::format("unknown placement policy '{}'", text));
}

std::vector<PortBinding> bind_ports(const MeshTopology& topology, int n, PlacementPolicy policy) {
  if (n < 1) throw std::invalid_argument(fmt::format("radix must be >= 1, got {}", n));
  const auto ports = enumerate_ports(topology);
  const auto m = static_cast<long long>(ports.size());
  if (2LL * n > m) {
    throw BindingError(fmt::format("radix {} needs {} ports, mesh has {}", n, 2 * n, m));
  }
  std::vector<PortBinding> out;
  for (long long i = 0; i < n; ++i) {
    if (policy == PlacementPolicy::kSpread) {
      // 2N positions spaced M / 2N apart; even slots transmit, odd receive.
      const auto at = [&](long long j) { return ports[static_cast<std::size_t>(j * m / (2 * n))]; };
      out.push_back({at(2 * i), at(2 * i + 1)});
    } else {
      out.push_back({ports[static_cast<std::size_t>(i)], ports[static_cast<std::size_t>(m - 1 - i)]});
    }
  }
  return out;
}

RotorSchedule make_schedule(const MeshTopology& topology, int n, PlacementPolicy policy) {
  RotorSchedule s;
  s.radix = n;
  s.policy = policy;
  s.matchings = generate_rotor_matchings(n);
  s.bindings = bind_ports(topology, n, policy);
  return s;
}

RoutingProblem matching_problem(std::shared_ptr<const MeshTopology> topology,
                                const RotorSchedule& schedule, const Matching& matching,
                                const ScheduleOptions& options) {
  std::vector<RouteRequest> routes;
  for (auto [i, j] : matching.pairs) {
    routes.push_back({i, schedule.bindings.at(static_cast<std::size_t>(i)).tx,
                      schedule.bindings.at(static_cast<std::size_t>(j)).rx});
  }
  RoutingProblem p(std::move(topology), std::move(routes));
  if (options.max_route_length) return p.with_max_route_length(*options.max_route_length);
  return p;
}

bool ScheduleResult::feasible() const {
  return std::all_of(matchings.begin(), matchings.end(),
                     [](const MatchingResult& m) { return m.ok(); });
}

bool ScheduleResult::any_timeout() const {
  return std::any_of(matchings.begin(), matchings.end(), [](const MatchingResult& m) {
    return m.outcome.status == SolveStatus::kTimeout;
  });
}

std::optional<int> ScheduleResult::first_failing_k() const {
  for (const auto& m : matchings) {
    if (!m.ok()) return m.k;
  }
  return std::nullopt;
}

namespace {

MatchingResult run_one(const std::shared_ptr<const MeshTopology>& topology,
                       const RotorSchedule& schedule, const Matching& matching,
                       const ScheduleOptions& options, const SolverBackend& backend) {
  const auto problem = matching_problem(topology, schedule, matching, options);
  MatchingResult r;
  r.k = matching.k;
  r.n_routes = problem.routes().size();
  const auto t0 = std::chrono::steady_clock::now();
  r.outcome = backend.solve(problem, options.budget);
  r.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (r.outcome.optimal()) {
    const auto& sol = *r.outcome.solution;
    r.report = verify(problem, sol);
    r.puc_count = std::count_if(sol.puc_states.begin(), sol.puc_states.end(),
                                [](PucState s) { return s != PucState::kUnused; });
    r.latency = estimate_config_latency(options.latency, r.puc_count);
  }
  return r;
}

}  // namespace

ScheduleResult run_schedule(std::shared_ptr<const MeshTopology> topology,
                            const RotorSchedule& schedule, const ScheduleOptions& options) {
  const auto backend = make_backend(options.backend);
  ScheduleResult result;
  result.matchings.resize(schedule.matchings.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < schedule.matchings.size(); i = next++) {
      result.matchings[i] = run_one(topology, schedule, schedule.matchings[i], options, *backend);
    }
  };
  const auto n_threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1,
                              std::max<std::size_t>(schedule.matchings.size(), 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

const char* to_string(RadixVerdict verdict) {
  switch (verdict) {
    case RadixVerdict::kFeasible: return "feasible";
    case RadixVerdict::kInfeasible: return "infeasible";
    case RadixVerdict::kUnknown: return "unknown";
    case RadixVerdict::kInfeasibleByBinding: return "infeasible-by-binding";
  }
  return "?";
}

RadixSearch max_feasible_radix(std::shared_ptr<const MeshTopology> topology,
                               PlacementPolicy policy, const std::vector<int>& candidates,
                               const ScheduleOptions& options) {
  if (candidates.empty()) throw std::invalid_argument("no radix candidates");
  RadixSearch search;
  for (int n : candidates) {
    RadixRecord rec;
    rec.radix = n;
    try {
      rec.schedule = make_schedule(*topology, n, policy);
    } catch (const BindingError&) {
      rec.verdict = RadixVerdict::kInfeasibleByBinding;
      search.records.push_back(std::move(rec));
      continue;
    }
    rec.result = run_schedule(topology, *rec.schedule, options);
    if (rec.result->feasible()) {
      rec.verdict = RadixVerdict::kFeasible;
      search.max_feasible = std::max(search.max_feasible, n);
    } else {
      // A proven-infeasible matching settles the verdict even if others timed out.
      const bool proven = std::any_of(
          rec.result->matchings.begin(), rec.result->matchings.end(), [](const MatchingResult& m) {
            return m.outcome.status == SolveStatus::kInfeasible;
          });
      rec.verdict = proven ? RadixVerdict::kInfeasible : RadixVerdict::kUnknown;
    }
    search.records.push_back(std::move(rec));
  }
  return search;
}

}  // namespace pipmesh
