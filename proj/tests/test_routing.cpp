#include <doctest.h>

#include <stdexcept>

#include "pipmesh/solver.hpp"
#include "support.hpp"

using namespace pipmesh;
using testsupport::arm_between;
using testsupport::hex;

namespace {

constexpr auto LT = TerminalSlot::kLeftTop;
constexpr auto LB = TerminalSlot::kLeftBottom;
constexpr auto RT = TerminalSlot::kRightTop;
constexpr auto RB = TerminalSlot::kRightBottom;

}  // namespace

TEST_CASE("problem defaults") {
  auto t = hex(2, 3);
  RoutingProblem p(t, {});
  CHECK(p.max_route_length() == 10);
  CHECK(default_max_route_length(*t) == 10);
  CHECK(p.cost_weights().size() == t->arms().size());
  CHECK(p.cost(ArmId{5}) == 1);
  CHECK(p.loss(ArmId{5}) == 1);
  CHECK(kLossless17 == 17);
}

TEST_CASE("problem validation") {
  auto t = hex(1, 1);
  const auto n = t->arms().size();
  CHECK_THROWS_AS(RoutingProblem(t, {{0, PortId{0}, PortId{1}}, {0, PortId{2}, PortId{3}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(t, {{0, PortId{0}, PortId{12}}}), std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(t, {{0, PortId{0}, PortId{0}}}), std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(t, {{0, PortId{0}, PortId{1}}, {1, PortId{1}, PortId{2}}}),
                  std::invalid_argument);
  std::vector<double> w(n, 1.0);
  w[3] = -1;
  CHECK_THROWS_AS(RoutingProblem(t, {}, w, std::vector<double>(n, 1.0), 4), std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(t, {}, std::vector<double>(n - 1, 1.0), std::vector<double>(n, 1.0), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(t, {}).with_max_route_length(-1), std::invalid_argument);
  CHECK_THROWS_AS(RoutingProblem(nullptr, {}), std::invalid_argument);
}

TEST_CASE("derived PUC states") {
  auto t = hex(1, 1);
  const PucId puc{0};
  CHECK(derive_puc_states(*t, {}) == std::vector<PucState>(6, PucState::kUnused));

  const auto bar_top = arm_between(*t, puc, LT, RT);
  const auto bar_bottom = arm_between(*t, puc, RB, LB);
  const auto cross = arm_between(*t, puc, LT, RB);
  REQUIRE(bar_top.valid());
  REQUIRE(bar_bottom.valid());
  REQUIRE(cross.valid());

  auto one = derive_puc_states(*t, {{bar_top}});
  CHECK(one[0] == PucState::kBar);
  for (std::size_t i = 1; i < one.size(); ++i) CHECK(one[i] == PucState::kUnused);

  // Two routes on disjoint bar arms share the PUC.
  CHECK(derive_puc_states(*t, {{bar_top}, {bar_bottom}})[0] == PucState::kBar);
  CHECK(derive_puc_states(*t, {{cross}})[0] == PucState::kCross);

  try {
    derive_puc_states(*t, {{bar_top}, {cross}});
    FAIL("expected a state conflict");
  } catch (const StateConflictError& e) {
    CHECK(e.puc() == puc);
  }
}

TEST_CASE("tracing drops stray cycles") {
  auto t = hex(2, 2);
  const auto ports = enumerate_ports(*t);
  RoutingProblem single(t, {{0, ports[0], ports[7]}});
  const auto out = solve(single, std::chrono::seconds(10));
  REQUIRE(out.optimal());
  const auto& base = out.solution;
  const auto& path = base->paths[0];
  // A vertex-to-vertex arm in an unused PUC plus its reverse is a closed loop.
  ArmId loop;
  for (const auto& a : t->arms()) {
    if (a.tail.is_vertex() && a.head.is_vertex() && base->puc_states[a.puc.index()] == PucState::kUnused) {
      loop = a.id;
      break;
    }
  }
  REQUIRE(loop.valid());
  auto arms = path;
  arms.push_back(loop);
  arms.push_back(t->reverse(loop));
  const auto s = make_solution(single, {arms});
  CHECK(s.paths[0] == path);
  CHECK(s.assignment[0].size() == path.size());
  CHECK(s.objective == static_cast<double>(path.size()));
  CHECK(verify(single, s).clean());
}

TEST_CASE("tracing fails on broken routes") {
  auto t = hex(1, 1);
  const auto ports = enumerate_ports(*t);
  CHECK_THROWS_AS(trace_route(*t, ports[0], ports[3], {}), std::runtime_error);
}

TEST_CASE("status names") {
  CHECK(std::string(to_string(SolveStatus::kOptimal)) == "optimal");
  CHECK(std::string(to_string(SolveStatus::kInfeasible)) == "infeasible");
  CHECK(std::string(to_string(SolveStatus::kTimeout)) == "timeout");
  CHECK(std::string(to_string(PucState::kCross)) == "cross");
}
