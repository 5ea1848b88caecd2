// Acceptance checks: one [PASS]/[FAIL] line per criterion, nonzero exit on
// any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include <fmt/core.h>

#include "pipmesh/bench.hpp"
#include "pipmesh/brute_force.hpp"
#include "pipmesh/hardware.hpp"
#include "pipmesh/rotor.hpp"
#include "pipmesh/solver.hpp"
#include "pipmesh/verifier.hpp"
#include "support.hpp"

using namespace pipmesh;
using namespace std::chrono_literals;

namespace {

constexpr int kBruteCap = 64;

struct Check {
  bool ok = true;
  std::string why;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

// Instances of criterion 1, shared with criterion 2.
std::vector<RoutingProblem> oracle_instances() {
  std::vector<RoutingProblem> out;
  const auto one = testsupport::hex(1, 1);
  const auto p1 = enumerate_ports(*one);
  for (auto s : p1) {
    for (auto d : p1) {
      if (s != d) out.emplace_back(one, std::vector<RouteRequest>{{0, s, d}});
    }
  }
  const auto two = testsupport::hex(2, 2);
  const auto p2 = enumerate_ports(*two);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> pick(0, p2.size() - 1);
  std::uniform_int_distribution<int> count(1, 2);
  for (int i = 0; i < 200; ++i) {
    const int n = count(rng);
    std::set<PortId> taken;
    std::vector<RouteRequest> routes;
    while (static_cast<int>(routes.size()) < n) {
      const auto s = p2[pick(rng)];
      const auto d = p2[pick(rng)];
      if (s == d || taken.contains(s) || taken.contains(d)) continue;
      taken.insert(s);
      taken.insert(d);
      routes.push_back({static_cast<int>(routes.size()), s, d});
    }
    out.emplace_back(two, routes);
  }
  return out;
}

const std::vector<RoutingProblem>& instances() {
  static const auto all = oracle_instances();
  return all;
}

Check oracle_equivalence() {
  Check c;
  int idx = 0, optimal = 0;
  for (const auto& p : instances()) {
    const auto fast = solve(p, 60s);
    const auto slow = brute_force_solve(p, kBruteCap);
    c.require(fast.status == slow.status,
              fmt::format("instance {}: {} vs {}", idx, to_string(fast.status), to_string(slow.status)));
    if (fast.optimal() && slow.optimal()) {
      ++optimal;
      c.require(fast.solution->objective == slow.solution->objective,
                fmt::format("instance {}: objective {} vs {}", idx, fast.solution->objective,
                            slow.solution->objective));
    }
    ++idx;
  }
  c.note = fmt::format("{} instances, {} optimal", idx, optimal);
  return c;
}

Check verifier_soundness() {
  Check c;
  int idx = 0;
  for (const auto& p : instances()) {
    const auto out = solve(p, 60s);
    if (out.optimal()) {
      c.require(verify(p, *out.solution).clean(), fmt::format("instance {} not clean", idx));
    }
    ++idx;
  }
  const auto base = testsupport::injection_base();
  c.require(verify(base.problem, base.solution).clean(), "injection base not clean");
  for (auto rule : testsupport::kAllRules) {
    const auto inj = testsupport::inject(rule, base.problem, base.solution);
    c.require(inj.has_value(), fmt::format("no injection for {}", to_string(rule)));
    if (inj) {
      c.require(verify(inj->problem, inj->solution).rules() == std::vector<Rule>{rule},
                fmt::format("injector {} did not trigger exactly its rule", to_string(rule)));
    }
  }
  return c;
}

Check rotor_coverage() {
  Check c;
  for (int n = 2; n <= 16; ++n) {
    const auto ms = generate_rotor_matchings(n);
    c.require(static_cast<int>(ms.size()) == n - 1, fmt::format("N={}: {} matchings", n, ms.size()));
    std::set<std::pair<int, int>> seen;
    std::size_t total = 0;
    for (const auto& m : ms) {
      std::set<int> src, dst;
      for (auto [i, j] : m.pairs) {
        c.require(i != j, fmt::format("N={}: fixed point", n));
        src.insert(i);
        dst.insert(j);
        seen.insert({i, j});
        ++total;
      }
      c.require(src.size() == static_cast<std::size_t>(n) && dst.size() == static_cast<std::size_t>(n),
                fmt::format("N={} k={}: not a permutation", n, m.k));
    }
    c.require(total == static_cast<std::size_t>(n * (n - 1)) && seen.size() == total,
              fmt::format("N={}: pairs not covered exactly once", n));
  }
  c.require(generate_rotor_matchings(8).size() == 7, "N=8 does not give 7 matchings");
  return c;
}

Check worked_examples() {
  Check c;
  for (const auto& ex : testsupport::worked_examples()) {
    const bool flagged = verify(ex.problem, ex.solution).contains(ex.expected);
    c.require(flagged, fmt::format("'{}' not flagged as {}", ex.name, to_string(ex.expected)));
    const auto out = solve(ex.problem, 60s);
    if (out.optimal()) {
      c.require(out.solution->paths != ex.solution.paths,
                fmt::format("'{}' proposed by the solver", ex.name));
    }
  }
  return c;
}

Check bitrate_table() {
  Check c;
  const BitratePredictor p;
  const std::vector<BitrateRow> rows = {
      {9, 9.41, 0},     {13, 9.41, 0},  {17, 9.41, 0},  {19, 3.08, 1.14},
      {21, 2.38, 2.84}, {23, 0, 22.73}, {25, 0, 81.25}, {27, 0, 100},
  };
  for (const auto& r : rows) {
    c.require(predict_bitrate(p, r.route_length) == r, fmt::format("row {} differs", r.route_length));
  }
  return c;
}

Check latency_model() {
  Check c;
  const LatencyModel m;
  c.require(to_ms(estimate_config_latency(m, 1)) == 47.189, "n=1 is not 47.189 ms");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> n(0, 1'000'000);
  for (int i = 0; i < 100; ++i) {
    const auto a = n(rng), b = n(rng);
    c.require(estimate_config_latency(m, a + b) ==
                  estimate_config_latency(m, a) + estimate_config_latency(m, b),
              fmt::format("f({}+{}) is not additive", a, b));
  }
  return c;
}

Check radix_scaling() {
  Check c;
  const auto t = testsupport::hex(4, 4);
  const int capacity = static_cast<int>(t->ports().size()) / 2;
  ScheduleOptions opt;
  opt.budget = 120s;
  std::vector<int> candidates;
  for (int n = 2; n <= capacity + 2; ++n) candidates.push_back(n);
  const auto search = max_feasible_radix(t, PlacementPolicy::kSpread, candidates, opt);
  c.require(search.max_feasible >= 2, fmt::format("N* = {}", search.max_feasible));
  c.note = fmt::format("N* = {}", search.max_feasible);
  for (const auto& rec : search.records) {
    if (rec.radix > capacity) {
      c.require(rec.verdict == RadixVerdict::kInfeasibleByBinding,
                fmt::format("radix {} not rejected at binding", rec.radix));
      continue;
    }
    if (!rec.result) continue;
    for (const auto& m : rec.result->matchings) {
      if (rec.verdict == RadixVerdict::kFeasible) {
        c.require(m.outcome.optimal() && m.report.clean(),
                  fmt::format("radix {} k={} does not re-verify", rec.radix, m.k));
      }
      if (m.outcome.optimal()) {
        const auto problem = matching_problem(t, make_schedule(*t, rec.radix, PlacementPolicy::kSpread),
                                              generate_rotor_matchings(rec.radix)[m.k - 1], opt);
        c.require(verify(problem, *m.outcome.solution).clean(),
                  fmt::format("radix {} k={} independent re-verify failed", rec.radix, m.k));
      }
    }
  }
  return c;
}

Check mesh_scaling() {
  Check c;
  Settings s;
  s.budget = 120s;
  const auto start = std::chrono::steady_clock::now();
  const auto rows = cmd_bench_meshscale({1, 2, 3, 4}, {1, 2, 4}, s);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  c.require(elapsed < 10min, "took longer than 10 minutes");
  c.require(rows.size() == 12, fmt::format("{} rows", rows.size()));
  const auto csv = meshscale_csv(rows);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  c.require(lines == 13, "CSV is not complete");
  int optimal = 0;
  for (const auto& r : rows) {
    if (r.status != "optimal") continue;
    ++optimal;
    c.require(r.problem && r.solution && verify(*r.problem, *r.solution).clean(),
              fmt::format("W={} n={} does not re-verify", r.width, r.size));
  }
  c.require(optimal > 0, "no optimal rows");
  c.note = fmt::format("{} rows, {} optimal", rows.size(), optimal);
  return c;
}

Check mesh_invariants() {
  Check c;
  for (int h = 1; h <= 5; ++h) {
    for (int w = 1; w <= 5; ++w) {
      const auto t = build_hex_mesh(h, w);
      const auto np = static_cast<long>(t.pucs().size());
      const auto nv = static_cast<long>(t.vertices().size());
      const auto nports = static_cast<long>(t.ports().size());
      c.require(4 * np == 2 * nv + nports, fmt::format("{}x{}: terminal conservation", h, w));
      c.require(static_cast<long>(t.arms().size()) == 8 * np, fmt::format("{}x{}: arm count", h, w));
      std::map<CellCoord, int> per_cell;
      for (const auto& v : t.vertices()) ++per_cell[attributed_cell(t, v.id)];
      for (int r = 0; r < h; ++r) {
        for (int col = 0; col < w; ++col) {
          if (!is_interior_cell({r, col}, h, w)) continue;
          c.require(per_cell[{r, col}] == 6,
                    fmt::format("{}x{}: interior cell ({},{}) has {} vertices", h, w, r, col,
                                per_cell[{r, col}]));
        }
      }
      const auto geo = testsupport::geometric_counts(h, w);
      c.require(geo.pucs == np && geo.vertices == nv && geo.ports == nports,
                fmt::format("{}x{}: geometric counts differ", h, w));
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"1 oracle equivalence", oracle_equivalence},
      {"2 verifier soundness", verifier_soundness},
      {"3 rotor coverage", rotor_coverage},
      {"4 worked examples rejected", worked_examples},
      {"5 bitrate table", bitrate_table},
      {"6 latency model", latency_model},
      {"7 radix scaling on 4x4", radix_scaling},
      {"8 mesh scaling sweep", mesh_scaling},
      {"9 mesh invariants", mesh_invariants},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = fmt::format("exception: {}", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok) {
      fmt::print("[PASS] {}{} ({:.1f}s)\n", name, c.note.empty() ? "" : ": " + c.note, secs);
    } else {
      ++failed;
      fmt::print("[FAIL] {}: {} ({:.1f}s)\n", name, c.why, secs);
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
