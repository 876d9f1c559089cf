#include "doctest.h"
#include "fixtures.hpp"
#include "hubloc/exact.hpp"
#include "oracle_reference.hpp"

#include <set>
#include <stdexcept>

using namespace hubloc;
using namespace hubloc::test;

namespace {

std::vector<ObjectiveVector> rounded_objectives(const ParetoFront& f) {
  std::vector<ObjectiveVector> v;
  for (const auto& s : f.solutions) v.push_back(rounded(s.objectives));
  return v;
}

}  // namespace

TEST_CASE("configuration counts") {
  CHECK(configuration_count_bound(3, 1) == 3);
  CHECK(configuration_count_bound(3, 2) == 9);
  CHECK(configuration_count_bound(10, 3) == 10 + 45 * 256 + 120 * 2187);

  ProblemInstance inst = priced(3, 1, 1.0);
  CHECK(enumerate_configurations(inst).size() == 3);
  inst.p = 2;
  const auto all = enumerate_configurations(inst);
  CHECK(all.size() == 9);
  std::set<std::vector<std::size_t>> distinct;
  for (const auto& d : all) distinct.insert(d.assignment);
  CHECK(distinct.size() == 9);
}

TEST_CASE("spokes beyond omega are skipped") {
  ProblemInstance inst = priced(3, 1, 1.0);
  set_distance(inst, 0, 1, 10);
  set_distance(inst, 0, 2, 500);
  set_distance(inst, 1, 2, 500);
  inst.omega = 250;
  // With one hub, node 2 can be neither a spoke nor a hub that reaches the others.
  CHECK(enumerate_configurations(inst).empty());
  inst.p = 2;
  const auto all = enumerate_configurations(inst);
  CHECK(all.size() == 2);
  for (const auto& d : all) CHECK(d.hub_open[2]);
}

TEST_CASE("enumeration budget") {
  const auto inst = small_random(10, 3, 1);
  CHECK_THROWS_AS(enumerate_configurations(inst, 1000), BudgetExceeded);
  try {
    enumerate_configurations(inst, 1000);
  } catch (const BudgetExceeded& e) {
    CHECK(e.budget() == 1000);
    CHECK(e.count() == configuration_count_bound(10, 3));
  }
}

TEST_CASE("unconstrained routing is the per-pair cheapest route") {
  ProblemInstance inst = small_random(6, 2, 8);
  inst.omega = std::numeric_limits<double>::infinity();
  const auto design = NetworkDesign::from_assignment(6, {0, 0, 0, 3, 3, 3});
  const double inf = std::numeric_limits<double>::infinity();
  const auto sol = solve_routing(inst, design, inf, inf, 0.5);
  REQUIRE(sol);
  double expected = fixed_cost(inst, design);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (i == j) continue;
      const double q = defuzzify(inst.demand(i, j), 0.5);
      double best = inf;
      for (const auto& r : feasible_routes(inst, design, i, j)) best = std::min(best, pair_objectives(inst, r, i, j, q).z1);
      expected += best;
    }
  }
  CHECK(sol->objectives.z1 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(check_feasibility(inst, *sol, 0.5).empty());
}

TEST_CASE("zero penalty cap admits only penalty-free routes") {
  ProblemInstance inst = small_random(5, 2, 2);
  inst.omega = std::numeric_limits<double>::infinity();
  const auto design = NetworkDesign::from_assignment(5, {0, 0, 0, 3, 3});
  const auto sol = solve_routing(inst, design, std::numeric_limits<double>::infinity(), 0.0, 0.5);
  REQUIRE(sol);
  CHECK(sol->objectives.z3 == 0.0);

  ProblemInstance tight = inst;
  tight.window_upper(1, 4) = 0;
  tight.window_lower(1, 4) = 0;
  CHECK_FALSE(solve_routing(tight, design, std::numeric_limits<double>::infinity(), 0.0, 0.5));
}

TEST_CASE("oracle matches a literal enumeration on tiny instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (std::size_t n : {2, 3, 4}) {
      const auto inst = seed % 2 ? small_random(n, 2, seed) : constrained_random(n, 2, seed);
      const auto oracle = brute_force_oracle(inst, 0.5);
      const auto literal = literal_front(inst, 0.5);
      CHECK(rounded_objectives(oracle) == rounded_objectives(literal));
      for (const auto& s : oracle.solutions) CHECK(check_feasibility(inst, s, 0.5).empty());
    }
  }
}

TEST_CASE("oracle special cases") {
  // Two nodes: the spoke's flows either go direct or over its link to the hub.
  const auto two = small_random(2, 1, 3);
  const auto f = brute_force_oracle(two, 0.5);
  REQUIRE(f.size() >= 1);
  CHECK(rounded_objectives(f) == rounded_objectives(literal_front(two, 0.5)));
  for (const auto& s : f.solutions) {
    const std::size_t hub = s.design.hubs().at(0);
    for (const auto& r : {s.plan.at(0, 1), s.plan.at(1, 0)}) CHECK((r == Route::direct() || r == Route::one_hub(hub)));
  }

  ProblemInstance empty = small_random(4, 2, 5);
  empty.omega = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) empty.demand(i, j) = crisp(0);
  }
  const auto e = brute_force_oracle(empty, 0.5);
  REQUIRE(e.size() == 1);
  CHECK(e.solutions[0].design.hub_count() == 1);
  CHECK(e.solutions[0].objectives.z1 == *std::min_element(empty.fixed_cost.begin(), empty.fixed_cost.end()));
  CHECK(e.solutions[0].objectives.z2 == 0.0);
  CHECK(e.solutions[0].objectives.z3 == 0.0);

  CHECK_THROWS_AS(static_cast<void>(brute_force_oracle(small_random(7, 2, 1), 0.5)), std::invalid_argument);
}

TEST_CASE("epsilon-constraint agrees with the oracle") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = seed % 2 ? small_random(5, 2, seed) : constrained_random(5, 2, seed);
    const auto oracle = brute_force_oracle(inst, 0.5);
    EpsilonGrid grid;
    grid.segments_z2 = 4;
    grid.segments_z3 = 4;
    const auto res = run_epsilon_constraint(inst, grid, 0.5);
    for (const auto& s : res.front.solutions) {
      CHECK_FALSE(strictly_dominates_any(s.objectives, oracle));
      CHECK(check_feasibility(inst, s, 0.5).empty());
      bool on_oracle = false;
      for (const auto& o : oracle.solutions) on_oracle |= rounded(o.objectives) == rounded(s.objectives);
      CHECK(on_oracle);
    }
    for (const auto& cell : res.cells) {
      const auto best = constrained_min_z1(oracle, cell.eps2, cell.eps3);
      CHECK(best.has_value() == cell.solution.has_value());
      if (best && cell.solution) CHECK(round_objective(cell.solution->objectives.z1) == *best);
    }
  }
}

TEST_CASE("front shape and determinism") {
  const auto inst = constrained_random(6, 2, 21);
  EpsilonGrid grid;
  const auto a = epsilon_constraint_front(inst, grid, 0.5);
  const auto b = epsilon_constraint_front(inst, grid, 0.5);
  CHECK(a == b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j) CHECK_FALSE(dominates_rounded(a.solutions[i].objectives, a.solutions[j].objectives));
    }
    if (i > 0) CHECK(lex_less_rounded(a.solutions[i - 1].objectives, a.solutions[i].objectives));
  }
}

TEST_CASE("one-cell grid gives the unconstrained cost optimum") {
  const auto inst = small_random(6, 2, 13);
  EpsilonGrid grid;
  grid.segments_z2 = 1;
  grid.segments_z3 = 1;
  const auto f = epsilon_constraint_front(inst, grid, 0.5);
  REQUIRE(f.size() == 1);
  const double inf = std::numeric_limits<double>::infinity();
  const auto lex = solve_lexicographic(inst, {0, 1, 2}, {inf, inf, inf}, 0.5);
  REQUIRE(lex);
  CHECK(rounded(f.solutions[0].objectives) == rounded(lex->objectives));
}

TEST_CASE("a finer nested grid covers the coarse front") {
  const auto inst = constrained_random(5, 2, 17);
  EpsilonGrid coarse;
  coarse.segments_z2 = coarse.segments_z3 = 3;
  EpsilonGrid fine;
  fine.segments_z2 = fine.segments_z3 = 6;
  const auto fc = epsilon_constraint_front(inst, coarse, 0.5);
  const auto ff = epsilon_constraint_front(inst, fine, 0.5);
  for (const auto& c : fc.solutions) {
    bool covered = false;
    for (const auto& f : ff.solutions) {
      covered |= rounded(f.objectives) == rounded(c.objectives) || dominates_rounded(f.objectives, c.objectives);
    }
    CHECK(covered);
  }
}

TEST_CASE("grid bounds") {
  const auto g = EpsilonGrid::span(4, 2, 0.0, 8.0, 10.0, 20.0);
  CHECK(g.eps2 == std::vector<double>{2, 4, 6, 8});
  CHECK(g.eps3 == std::vector<double>{15, 20});
}

TEST_CASE("no feasible solution") {
  ProblemInstance inst = small_random(4, 1, 3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) inst.max_transfer_time(i, j) = 0.5;
    }
  }
  CHECK_THROWS_AS(static_cast<void>(run_epsilon_constraint(inst, EpsilonGrid{}, 0.5)), NoFeasibleSolution);
  CHECK(brute_force_oracle(inst, 0.5).empty());
}
