#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "pipmesh/bench.hpp"
#include "pipmesh/verifier.hpp"

using namespace pipmesh;
using namespace std::chrono_literals;

namespace {

Settings quick() {
  Settings s;
  s.budget = 30s;
  return s;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("empty radix list gives a header-only CSV") {
  const auto r = cmd_bench_radix(2, 2, {}, quick());
  CHECK(r.records.empty());
  CHECK_FALSE(r.search.has_value());
  CHECK(radix_csv(r.records) ==
        "experiment,height,width,radix,k,status,objective,puc_count,solve_ms,latency_ms\n");
}

TEST_CASE("radix bench on 3x3") {
  const auto r = cmd_bench_radix(3, 3, {2}, quick());
  REQUIRE(r.search.has_value());
  CHECK(r.search->max_feasible == 2);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].status == "optimal");
  CHECK(r.records[0].matching == 1);
  REQUIRE(r.records[0].solution.has_value());
  CHECK(verify(*r.records[0].problem, *r.records[0].solution).clean());
  CHECK(r.summary.find("max feasible radix on 3x3 (spread): 2") == 0);
}

TEST_CASE("radix bench rejects oversize radices at binding") {
  const auto r = cmd_bench_radix(1, 1, {7, 2}, quick());
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].size == 2);
  CHECK(r.records.back().status == "binding-error");
  const auto csv = lines(radix_csv(r.records));
  CHECK(csv.back() == "radix,1,1,7,,binding-error,,0,0.000,0.000");
}

TEST_CASE("mesh scaling rows") {
  const auto rows = cmd_bench_meshscale({3, 1, 2}, {1}, quick());
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].width == static_cast<int>(i) + 1);
    CHECK(rows[i].height == rows[i].width);
    CHECK(rows[i].status == "optimal");
    CHECK(rows[i].solve_ms >= 0);
    REQUIRE(rows[i].solution.has_value());
    CHECK(verify(*rows[i].problem, *rows[i].solution).clean());
  }
  const auto csv = lines(meshscale_csv(rows));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0] == "width,height,n_routes,status,objective,solve_ms");
  CHECK(csv[1].rfind("1,1,1,optimal,", 0) == 0);
}

TEST_CASE("too many routes for the ports is recorded in-row") {
  const auto rows = cmd_bench_meshscale({1}, {7}, quick());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "binding-error");
  CHECK_FALSE(rows[0].objective.has_value());
  CHECK(lines(meshscale_csv(rows))[1] == "1,1,7,binding-error,,0.000");
  CHECK_THROWS_AS(cmd_bench_meshscale({0}, {1}, quick()), std::invalid_argument);
}
