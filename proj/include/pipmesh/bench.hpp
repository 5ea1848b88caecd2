#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pipmesh/config.hpp"
#include "pipmesh/rotor.hpp"

namespace pipmesh {

// One row per (experiment, instance, matching).
struct BenchRecord {
  std::string experiment;
  int height = 0;
  int width = 0;
  int size = 0;       // radix for "radix", route count for "meshscale"
  int matching = -1;  // rotor k, -1 when not applicable
  std::string status;  // optimal | infeasible | timeout | binding-error
  std::optional<double> objective;
  long long puc_count = 0;
  double solve_ms = 0;
  double latency_ms = 0;

  // Kept so that rows can be re-verified or saved.
  std::optional<RoutingProblem> problem;
  std::optional<RoutingSolution> solution;
};

// Columns: experiment,height,width,radix,k,status,objective,puc_count,solve_ms,latency_ms
std::string radix_csv(const std::vector<BenchRecord>& records);
// Columns: width,height,n_routes,status,objective,solve_ms
std::string meshscale_csv(const std::vector<BenchRecord>& records);

struct RadixBench {
  std::optional<RadixSearch> search;  // absent for an empty radix list
  std::vector<BenchRecord> records;
  std::string summary;
};

// Rotor schedules of each radix on an H x W mesh; candidates are sorted
// ascending first. Candidates that cannot be bound get one binding-error row.
RadixBench cmd_bench_radix(int height, int width, std::vector<int> radices, const Settings& settings);

// W = H for every width; n routes from the top-left ports to the
// bottom-right ports (corners policy, tx i -> rx i). Rows are ordered by
// (width, n). Timing covers the solve call only.
std::vector<BenchRecord> cmd_bench_meshscale(const std::vector<int>& widths,
                                             const std::vector<int>& route_counts,
                                             const Settings& settings);

}  // namespace pipmesh
