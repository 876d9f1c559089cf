#include "doctest.h"
#include "fixtures.hpp"
#include "hubloc/evaluation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace hubloc;
using namespace hubloc::test;

namespace {

// Node 1 is the hub; pair (0,1) is one direct flow of 10 units.
ProblemInstance direct_pair() {
  ProblemInstance inst = priced(2, 1, 2.0);
  set_distance(inst, 0, 1, 100);
  inst.fixed_cost = {0, 300};
  inst.demand(0, 1) = crisp(10);
  return inst;
}

// i=0, k=1, j=2 with the hub at 1.
ProblemInstance one_hub_line() {
  ProblemInstance inst = priced(3, 1, 2.0);
  set_distance(inst, 0, 1, 100);
  set_distance(inst, 1, 2, 150);
  set_distance(inst, 0, 2, 200);
  inst.fixed_cost = {0, 300, 0};
  inst.handling_cost = {0, 0.1, 0};
  inst.beta_discount = 0.8;
  inst.demand(0, 2) = crisp(10);
  return inst;
}

ProblemInstance emission_pair(double q) {
  ProblemInstance inst = priced(2, 1, 0.0);
  set_distance(inst, 0, 1, 100);
  inst.demand(0, 1) = crisp(q);
  inst.aircraft_capacity = 50;
  inst.lto_p1 = 1;
  inst.ccd_rate_p1 = 2;
  inst.lto_p2 = 3;
  inst.ccd_rate_p2 = 0.5;
  return inst;
}

ProblemInstance window_pair(double t) {
  ProblemInstance inst = priced(2, 1, 0.0);
  inst.travel_time(0, 1) = t;
  inst.window_lower(0, 1) = 5;
  inst.window_upper(0, 1) = 10;
  inst.early_penalty(0, 1) = 1.2;
  inst.late_penalty(0, 1) = 1.3;
  return inst;
}

}  // namespace

TEST_CASE("route time sums legs") {
  ProblemInstance inst = ProblemInstance::zeros(4, 2);
  inst.travel_time(0, 3) = 12;
  inst.travel_time(0, 1) = 5;
  inst.travel_time(1, 3) = 7;
  inst.travel_time(0, 2) = 3;
  inst.travel_time(2, 1) = 4;
  inst.travel_time(1, 3) = 7;
  CHECK(route_time(inst, Route::direct(), 0, 3) == 12);
  CHECK(route_time(inst, Route::one_hub(1), 0, 3) == 12);
  inst.travel_time(1, 3) = 5;
  CHECK(route_time(inst, Route::two_hub(2, 1), 0, 3) == 12);
}

TEST_CASE("aircraft count is a ceiling") {
  CHECK(aircraft_count(50, 50) == 1);
  CHECK(aircraft_count(51, 50) == 2);
  CHECK(aircraft_count(0, 50) == 0);
  CHECK_THROWS_AS(static_cast<void>(aircraft_count(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(aircraft_count(-1, 50)), std::invalid_argument);
}

TEST_CASE("cost") {
  const auto inst = direct_pair();
  const auto d = NetworkDesign::from_assignment(2, {1, 1});
  CHECK(eval_cost(inst, d, all_direct(2), 0.5) == doctest::Approx(2300).epsilon(1e-12));

  const auto line = one_hub_line();
  const auto dl = NetworkDesign::from_assignment(3, {1, 1, 1});
  RoutePlan plan(3);
  plan.at(0, 2) = Route::one_hub(1);
  CHECK(eval_cost(line, dl, plan, 0.5) == doctest::Approx(4301).epsilon(1e-12));

  ProblemInstance empty = direct_pair();
  empty.demand(0, 1) = crisp(0);
  CHECK(eval_cost(empty, d, all_direct(2), 0.5) == 300.0);
}

TEST_CASE("two-hub cost charges handling at both hubs") {
  ProblemInstance inst = priced(4, 2, 1.0);
  set_distance(inst, 0, 1, 10);
  set_distance(inst, 1, 2, 20);
  set_distance(inst, 2, 3, 30);
  inst.handling_cost = {0, 0.5, 0.25, 0};
  inst.alpha_discount = 0.5;
  inst.beta_discount = 0.8;
  inst.demand(0, 3) = crisp(4);
  const auto d = NetworkDesign::from_assignment(4, {1, 1, 2, 2});
  RoutePlan plan(4);
  plan.at(0, 3) = Route::two_hub(1, 2);
  const double expected = (0.8 * (10 + 30) + 0.5 * 20) * 4 + (0.5 + 0.25) * 4;
  CHECK(eval_cost(inst, d, plan, 0.5) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("emissions") {
  const auto d = NetworkDesign::from_assignment(2, {1, 1});
  CHECK(eval_emissions(emission_pair(50), d, all_direct(2), 0.5) == doctest::Approx(254));
  CHECK(eval_emissions(emission_pair(100), d, all_direct(2), 0.5) == doctest::Approx(508));
  CHECK(eval_emissions(emission_pair(0), d, all_direct(2), 0.5) == 0.0);
  const auto b = eval_emission_breakdown(emission_pair(50), all_direct(2), 0.5);
  CHECK(b.group1 == doctest::Approx(201));
  CHECK(b.group2 == doctest::Approx(53));
}

TEST_CASE("time-window penalty") {
  const auto d = NetworkDesign::from_assignment(2, {1, 1});
  CHECK(eval_time_penalty(window_pair(7), d, all_direct(2)) == 0.0);
  CHECK(eval_time_penalty(window_pair(12), d, all_direct(2)) == doctest::Approx(2.6));
  CHECK(eval_time_penalty(window_pair(3), d, all_direct(2)) == doctest::Approx(2.4));
}

TEST_CASE("evaluate bundles the three objectives and rejects infeasible pairs") {
  ProblemInstance inst = small_random(6, 2, 3);
  inst.omega = std::numeric_limits<double>::infinity();
  const auto d = NetworkDesign::from_assignment(6, {0, 0, 0, 3, 3, 3});
  RoutePlan plan(6);
  plan.at(1, 4) = Route::two_hub(0, 3);
  plan.at(1, 2) = Route::one_hub(0);
  const auto z = evaluate(inst, d, plan, 0.3);
  CHECK(z.z1 == eval_cost(inst, d, plan, 0.3));
  CHECK(z.z2 == eval_emissions(inst, d, plan, 0.3));
  CHECK(z.z3 == eval_time_penalty(inst, d, plan));
  CHECK(z == evaluate_unchecked(inst, d, plan, 0.3));

  RoutePlan bad = plan;
  bad.at(1, 4) = Route::one_hub(0);
  CHECK_THROWS_AS(static_cast<void>(evaluate(inst, d, bad, 0.3)), InfeasibleSolution);
}

TEST_CASE("fixed-plan trends in phi, discounts and alpha prime") {
  ProblemInstance base = small_random(8, 3, 11);
  base.omega = std::numeric_limits<double>::infinity();
  base.capacity.assign(8, std::numeric_limits<double>::infinity());
  const auto d = NetworkDesign::from_assignment(8, {0, 0, 0, 3, 3, 5, 5, 5});
  RoutePlan plan(8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (i == j) continue;
      const auto rs = feasible_routes(base, d, i, j);
      plan.at(i, j) = rs.back();
    }
  }
  const auto z0 = evaluate(base, d, plan, 0.5);

  ProblemInstance phi = base;
  phi.aircraft_capacity = 70;
  const auto zp = evaluate(phi, d, plan, 0.5);
  CHECK(zp.z1 == z0.z1);
  CHECK(zp.z3 == z0.z3);
  CHECK(zp.z2 <= z0.z2);

  ProblemInstance disc = base;
  disc.alpha_discount = 0.8;
  disc.beta_discount = 1.0;
  CHECK(evaluate(disc, d, plan, 0.5).z1 >= z0.z1);

  const auto lo = evaluate(base, d, plan, 0.1);
  const auto hi = evaluate(base, d, plan, 0.9);
  CHECK(lo.z1 <= hi.z1);
  CHECK(lo.z2 <= hi.z2);
  CHECK(lo.z3 == hi.z3);
}
