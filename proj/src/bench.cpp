#include "pipmesh/bench.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pipmesh/solver.hpp"

namespace pipmesh {

namespace {

std::string objective_cell(const BenchRecord& r) {
  return r.objective ? fmt::format("{}", *r.objective) : std::string();
}

}  // namespace

std::string radix_csv(const std::vector<BenchRecord>& records) {
  std::string out = "experiment,height,width,radix,k,status,objective,puc_count,solve_ms,latency_ms\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{:.3f},{:.3f}\n", r.experiment, r.height, r.width,
                       r.size, r.matching < 0 ? std::string() : std::to_string(r.matching),
                       r.status, objective_cell(r), r.puc_count, r.solve_ms, r.latency_ms);
  }
  return out;
}

std::string meshscale_csv(const std::vector<BenchRecord>& records) {
  std::string out = "width,height,n_routes,status,objective,solve_ms\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{:.3f}\n", r.width, r.height, r.size, r.status,
                       objective_cell(r), r.solve_ms);
  }
  return out;
}

RadixBench cmd_bench_radix(int height, int width, std::vector<int> radices,
                           const Settings& settings) {
  RadixBench bench;
  std::sort(radices.begin(), radices.end());
  if (radices.empty()) {
    bench.summary = "no radix candidates";
    return bench;
  }
  auto topology = std::make_shared<const MeshTopology>(build_hex_mesh(height, width));
  const auto options = settings.schedule_options();
  bench.search = max_feasible_radix(topology, settings.policy, radices, options);
  for (const auto& rec : bench.search->records) {
    if (rec.verdict == RadixVerdict::kInfeasibleByBinding) {
      bench.records.push_back({"radix", height, width, rec.radix, -1, "binding-error", {}, 0, 0, 0, {}, {}});
      continue;
    }
    for (std::size_t m = 0; m < rec.result->matchings.size(); ++m) {
      const auto& mr = rec.result->matchings[m];
      BenchRecord row{"radix", height, width, rec.radix, mr.k, to_string(mr.outcome.status),
                      {}, mr.puc_count, mr.solve_ms, to_ms(mr.latency), {}, {}};
      row.problem = matching_problem(topology, *rec.schedule, rec.schedule->matchings[m], options);
      if (mr.outcome.optimal()) {
        row.objective = mr.outcome.solution->objective;
        row.solution = mr.outcome.solution;
      }
      bench.records.push_back(std::move(row));
    }
  }
  std::vector<std::string> parts;
  for (const auto& rec : bench.search->records) {
    parts.push_back(fmt::format("{}={}", rec.radix, to_string(rec.verdict)));
  }
  bench.summary = fmt::format("max feasible radix on {}x{} ({}): {} [{}]", height, width,
                              to_string(settings.policy), bench.search->max_feasible,
                              fmt::join(parts, ", "));
  return bench;
}

std::vector<BenchRecord> cmd_bench_meshscale(const std::vector<int>& widths,
                                             const std::vector<int>& route_counts,
                                             const Settings& settings) {
  std::vector<int> ws = widths;
  std::vector<int> ns = route_counts;
  std::sort(ws.begin(), ws.end());
  std::sort(ns.begin(), ns.end());
  const auto backend = make_backend(settings.backend);
  std::vector<BenchRecord> rows;
  for (int w : ws) {
    if (w < 1) throw std::invalid_argument(fmt::format("width must be >= 1, got {}", w));
    auto topology = std::make_shared<const MeshTopology>(build_hex_mesh(w, w));
    for (int n : ns) {
      BenchRecord row{"meshscale", w, w, n, -1, {}, {}, 0, 0, 0, {}, {}};
      std::vector<PortBinding> binding;
      try {
        binding = bind_ports(*topology, n, PlacementPolicy::kCorners);
      } catch (const BindingError&) {
        row.status = "binding-error";
        rows.push_back(std::move(row));
        continue;
      }
      std::vector<RouteRequest> routes;
      for (int i = 0; i < n; ++i) {
        routes.push_back({i, binding[static_cast<std::size_t>(i)].tx, binding[static_cast<std::size_t>(i)].rx});
      }
      RoutingProblem problem(topology, std::move(routes));
      if (settings.max_route_length) problem = problem.with_max_route_length(*settings.max_route_length);

      const auto t0 = std::chrono::steady_clock::now();
      auto outcome = backend->solve(problem, settings.budget);
      row.solve_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

      row.status = to_string(outcome.status);
      if (outcome.optimal()) {
        row.objective = outcome.solution->objective;
        row.puc_count = std::count_if(outcome.solution->puc_states.begin(),
                                      outcome.solution->puc_states.end(),
                                      [](PucState s) { return s != PucState::kUnused; });
        row.latency_ms = to_ms(estimate_config_latency(settings.latency, row.puc_count));
        row.solution = std::move(outcome.solution);
      }
      row.problem = std::move(problem);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace pipmesh
