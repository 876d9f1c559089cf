#include "doctest.h"
#include "fixtures.hpp"
#include "hubloc/evaluation.hpp"
#include "hubloc/model.hpp"

#include <algorithm>
#include <string>

using namespace hubloc;
using namespace hubloc::test;

namespace {

bool has_code(const ViolationReport& r, const std::string& code) {
  return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.code == code; });
}

ProblemInstance three_nodes() {
  ProblemInstance inst = priced(3, 2, 1.0);
  set_distance(inst, 0, 1, 10);
  set_distance(inst, 0, 2, 20);
  set_distance(inst, 1, 2, 15);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      inst.travel_time(i, j) = inst.distance(i, j) / 5.0;
      inst.demand(i, j) = crisp(1.0);
    }
  }
  return inst;
}

}  // namespace

TEST_CASE("well formed instance has an empty report") {
  CHECK(validate_instance(three_nodes()).empty());
  CHECK(validate_instance(small_random(6, 2, 9)).empty());
}

TEST_CASE("asymmetric distance is reported") {
  ProblemInstance inst = three_nodes();
  inst.distance(0, 1) = 11;
  const auto r = validate_instance(inst);
  REQUIRE(has_code(r, "distance-symmetry"));
  bool cites = false;
  for (const auto& v : r) cites |= v.detail.find("(0,1)") != std::string::npos;
  CHECK(cites);
}

TEST_CASE("inverted time window is reported") {
  ProblemInstance inst = three_nodes();
  inst.window_lower(0, 1) = 10;
  inst.window_upper(0, 1) = 5;
  CHECK(has_code(validate_instance(inst), "window-order"));
}

TEST_CASE("feasible routes by allocation") {
  ProblemInstance inst = three_nodes();
  const auto same = NetworkDesign::from_assignment(3, {1, 1, 1});
  const auto r01 = feasible_routes(inst, same, 0, 2);
  REQUIRE(r01.size() == 2);
  CHECK(r01[0] == Route::direct());
  CHECK(r01[1] == Route::one_hub(1));

  const auto split = NetworkDesign::from_assignment(3, {0, 0, 2});
  const auto r12 = feasible_routes(inst, split, 1, 2);
  REQUIRE(r12.size() == 2);
  CHECK(r12[0] == Route::direct());
  CHECK(r12[1] == Route::two_hub(0, 2));

  inst.max_transfer_time(1, 2) = 0.5;
  CHECK(feasible_routes(inst, split, 1, 2).empty());
}

TEST_CASE("route sets never mix one-hub and two-hub routes") {
  const ProblemInstance inst = small_random(5, 3, 4);
  for (const auto& a : std::vector<std::vector<std::size_t>>{{0, 0, 2, 2, 0}, {1, 1, 1, 1, 1}, {0, 1, 2, 0, 1}}) {
    const auto d = NetworkDesign::from_assignment(5, a);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (i == j) continue;
        const auto rs = feasible_routes(inst, d, i, j);
        CHECK(rs.size() <= 3);
        const bool one = std::any_of(rs.begin(), rs.end(), [](const Route& r) { return r.kind == RouteKind::OneHub; });
        const bool two = std::any_of(rs.begin(), rs.end(), [](const Route& r) { return r.kind == RouteKind::TwoHub; });
        CHECK_FALSE((one && two));
      }
    }
  }
}

TEST_CASE("check feasibility") {
  ProblemInstance inst = three_nodes();
  EvaluatedSolution sol;
  sol.design = NetworkDesign::from_assignment(3, {1, 1, 1});
  sol.plan = all_direct(3);
  CHECK(check_feasibility(inst, sol, 0.5).empty());

  SUBCASE("one-hub route through a hub the origin is not allocated to") {
    sol.design = NetworkDesign::from_assignment(3, {0, 0, 2});
    sol.plan.at(0, 2) = Route::one_hub(0);
    CHECK(has_code(check_feasibility(inst, sol, 0.5), "one-hub-assignment"));
  }
  SUBCASE("zero capacity hub with positive flow") {
    inst.capacity[1] = 0.0;
    sol.plan.at(0, 2) = Route::one_hub(1);
    CHECK(has_code(check_feasibility(inst, sol, 0.5), "hub-capacity"));
  }
  SUBCASE("transfer-time cap") {
    inst.max_transfer_time(0, 2) = 1.0;
    CHECK(has_code(check_feasibility(inst, sol, 0.5), "route-time"));
  }
  SUBCASE("hub count above p") {
    inst.p = 1;
    sol.design = NetworkDesign::from_assignment(3, {0, 0, 2});
    CHECK_FALSE(check_feasibility(inst, sol, 0.5).empty());
  }
  SUBCASE("spoke beyond omega") {
    inst.omega = 12.0;
    CHECK_FALSE(check_design(inst, sol.design).empty());
  }
}

TEST_CASE("two-hub routes load both hubs") {
  ProblemInstance inst = three_nodes();
  const auto d = NetworkDesign::from_assignment(3, {0, 0, 2});
  RoutePlan plan(3);
  plan.at(1, 2) = Route::two_hub(0, 2);
  inst.demand(1, 2) = {2, 2, 4, 4};
  const auto loads = hub_loads(inst, plan, 0.5);
  CHECK(loads[0] == 3.0);
  CHECK(loads[1] == 0.0);
  CHECK(loads[2] == 3.0);
}

TEST_CASE("design from assignment self-assigns hubs") {
  const auto d = NetworkDesign::from_assignment(4, {1, 1, 3, 3});
  CHECK(d.hubs() == std::vector<std::size_t>{1, 3});
  CHECK(d.hub_count() == 2);
  for (std::size_t k : d.hubs()) CHECK(d.assignment[k] == k);
}
