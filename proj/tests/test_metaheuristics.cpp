#include "doctest.h"
#include "fixtures.hpp"
#include "hubloc/exact.hpp"
#include "hubloc/metaheuristics.hpp"
#include "oracle_reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace hubloc;
using namespace hubloc::test;

namespace {

ProblemInstance triangle() {
  ProblemInstance inst = priced(3, 1, 1.0);
  set_distance(inst, 0, 1, 10);
  set_distance(inst, 1, 2, 10);
  set_distance(inst, 0, 2, 15);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) inst.travel_time(i, j) = inst.distance(i, j);
    }
  }
  inst.demand(0, 2) = crisp(5);
  inst.demand(2, 0) = crisp(3);
  return inst;
}

std::vector<std::size_t> reference_ranks(const std::vector<ObjectiveVector>& pts) {
  std::vector<std::size_t> rank(pts.size(), std::numeric_limits<std::size_t>::max());
  std::size_t assigned = 0;
  for (std::size_t r = 0; assigned < pts.size(); ++r) {
    std::vector<std::size_t> layer;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      if (rank[a] != std::numeric_limits<std::size_t>::max()) continue;
      bool dominated = false;
      for (std::size_t b = 0; b < pts.size() && !dominated; ++b) {
        if (b != a && rank[b] == std::numeric_limits<std::size_t>::max()) dominated = dominates(pts[b], pts[a]);
      }
      if (!dominated) layer.push_back(a);
    }
    for (std::size_t a : layer) rank[a] = r;
    assigned += layer.size();
  }
  return rank;
}

void check_front(const ProblemInstance& inst, const ParetoFront& f, double alpha_prime) {
  REQUIRE_FALSE(f.empty());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(check_feasibility(inst, f.solutions[i], alpha_prime).empty());
    CHECK(f.solutions[i].objectives == evaluate(inst, f.solutions[i].design, f.solutions[i].plan, alpha_prime));
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (i != j) CHECK_FALSE(dominates_rounded(f.solutions[i].objectives, f.solutions[j].objectives));
    }
  }
}

Nsga2Params quick_nsga2(std::uint64_t seed) {
  Nsga2Params p;
  p.max_iterations = 30;
  p.population_size = 30;
  p.seed = seed;
  return p;
}

MopsoParams quick_mopso(std::uint64_t seed) {
  MopsoParams p;
  p.max_iterations = 30;
  p.population_size = 30;
  p.archive_capacity = 30;
  p.seed = seed;
  return p;
}

MowoaParams quick_mowoa(std::uint64_t seed) {
  MowoaParams p;
  p.max_iterations = 30;
  p.population_size = 30;
  p.archive_capacity = 30;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("decode tie rule, direct preference and hub count") {
  const ProblemInstance inst = triangle();
  Genome g = Genome::uniform(3, 0.0);
  auto d = decode(g, inst);
  REQUIRE(d);
  CHECK(d->design.hubs() == std::vector<std::size_t>{0});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(d->plan.at(i, j) == Route::direct());
    }
  }

  ProblemInstance five = small_random(5, 3, 1);
  Genome h = Genome::uniform(5, 0.3);
  h.genes[0] = 0.99;
  d = decode(h, five);
  REQUIRE(d);
  CHECK(d->design.hub_count() == 3);
  h.genes[0] = 0.0;
  CHECK(decode(h, five)->design.hub_count() == 1);
}

TEST_CASE("decode picks hub routes for high route keys and falls back to direct") {
  ProblemInstance inst = triangle();
  Genome g = Genome::uniform(3, 0.9);
  g.genes[0] = 0.0;
  g.genes[1] = 0.1;
  g.genes[2] = 0.9;  // hub 1
  g.genes[3] = 0.1;
  auto d = decode(g, inst);
  REQUIRE(d);
  CHECK(d->design.hubs() == std::vector<std::size_t>{1});
  CHECK(d->plan.at(0, 2) == Route::one_hub(1));

  inst.max_transfer_time(0, 2) = 16;  // hub route takes 20
  d = decode(g, inst);
  REQUIRE(d);
  CHECK(d->plan.at(0, 2) == Route::direct());
}

TEST_CASE("decode failures") {
  ProblemInstance inst = triangle();
  inst.omega = 5;
  CHECK_FALSE(decode(Genome::uniform(3, 0.0), inst));

  inst = triangle();
  inst.max_transfer_time(0, 2) = 1;
  CHECK_FALSE(decode(Genome::uniform(3, 0.0), inst));
  CHECK(evaluate_genome(Genome::uniform(3, 0.0), inst, 0.5) == ObjectiveVector::infinite());
  CHECK_THROWS_AS(static_cast<void>(decode(Genome::uniform(4, 0.0), inst)), std::invalid_argument);
}

TEST_CASE("decode is pure") {
  const auto inst = small_random(7, 3, 2);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    Genome g;
    for (std::size_t k = 0; k < Genome::length(7); ++k) g.genes.push_back(rng.uniform());
    const auto a = decode(g, inst);
    const auto b = decode(g, inst);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->design == b->design);
      CHECK(a->plan == b->plan);
      CHECK(check_design(inst, a->design).empty());
    }
  }
}

TEST_CASE("capacity repair") {
  ProblemInstance inst = triangle();
  const auto design = NetworkDesign::from_assignment(3, {1, 1, 1});
  RoutePlan plan(3);

  SUBCASE("no violation leaves the plan unchanged") {
    plan.at(0, 2) = Route::one_hub(1);
    const RoutePlan before = plan;
    CHECK(repair_capacity(inst, design, plan, 0.5));
    CHECK(plan == before);
  }
  SUBCASE("largest pair on the violated hub goes direct") {
    inst.capacity[1] = 6;
    plan.at(0, 2) = Route::one_hub(1);
    plan.at(2, 0) = Route::one_hub(1);
    CHECK(repair_capacity(inst, design, plan, 0.5));
    CHECK(plan.at(0, 2) == Route::direct());
    CHECK(plan.at(2, 0) == Route::one_hub(1));
    EvaluatedSolution s{design, plan, {}, 0.5};
    CHECK(check_feasibility(inst, s, 0.5).empty());
  }
  SUBCASE("no time-feasible direct route marks the plan infeasible") {
    inst.capacity[1] = 1;
    inst.max_transfer_time(0, 2) = 14;
    inst.max_transfer_time(2, 0) = 14;
    inst.travel_time(0, 1) = inst.travel_time(1, 2) = inst.travel_time(2, 1) = inst.travel_time(1, 0) = 5;
    plan.at(0, 2) = Route::one_hub(1);
    plan.at(2, 0) = Route::one_hub(1);
    CHECK_FALSE(repair_capacity(inst, design, plan, 0.5));
  }
}

TEST_CASE("dominance") {
  CHECK(dominates({1, 1, 1}, {2, 2, 2}));
  CHECK_FALSE(dominates({1, 2, 1}, {2, 1, 2}));
  CHECK_FALSE(dominates({1, 1, 1}, {1, 1, 1}));
  CHECK(dominates({1, 1, 1}, {1, 1, 2}));
}

TEST_CASE("nondominated sort examples") {
  CHECK(nondominated_sort({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(nondominated_sort({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}}) == std::vector<std::size_t>{0, 0, 0});
  CHECK(nondominated_sort({{2, 2, 2}, {1, 1, 1}, {2, 2, 2}}) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("nondominated sort agrees with a pairwise reference") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.below(200);
    std::vector<ObjectiveVector> pts;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse values create ties and duplicates.
      pts.push_back({static_cast<double>(rng.below(8)), static_cast<double>(rng.below(8)),
                     static_cast<double>(rng.below(8))});
    }
    CHECK(nondominated_sort(pts) == reference_ranks(pts));
  }
}

TEST_CASE("crowding distance") {
  const double inf = std::numeric_limits<double>::infinity();
  auto two = crowding_distance({{0, 1, 0}, {1, 0, 0}});
  CHECK(two[0] == inf);
  CHECK(two[1] == inf);

  auto three = crowding_distance({{0, 2, 0}, {1, 1, 0}, {2, 0, 0}});
  CHECK(three[0] == inf);
  CHECK(three[2] == inf);
  CHECK(std::isfinite(three[1]));
  CHECK(three[1] > 0.0);

  auto same = crowding_distance({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  std::size_t zeros = 0;
  for (double c : same) zeros += c == 0.0;
  CHECK(zeros >= 2);
}

TEST_CASE("archive stays nondominated and within capacity") {
  GridArchive archive(10, 7);
  Rng rng(1);
  Rng pick(2);
  for (int t = 0; t < 2000; ++t) {
    const double x = rng.uniform();
    const ObjectiveVector v{x, 1.0 - x + 0.3 * rng.uniform(), rng.uniform()};
    archive.insert(Genome{{x}}, v, rng);
    CHECK(archive.size() <= 10);
    for (const auto& a : archive.entries()) {
      for (const auto& b : archive.entries()) CHECK_FALSE(dominates_rounded(a.objectives, b.objectives));
    }
    const auto& leader = archive.select_leader(pick);
    CHECK(std::any_of(archive.entries().begin(), archive.entries().end(),
                      [&](const GridArchive::Entry& e) { return &e == &leader; }));
  }

  CHECK(archive.insert(Genome{{0.5}}, {-1, -1, -1}, rng));
  CHECK(archive.size() == 1);
  CHECK_FALSE(archive.insert(Genome{{0.5}}, {-1, -1, -1}, rng));
  CHECK_FALSE(archive.insert(Genome{{0.5}}, {0, 0, 0}, rng));
  CHECK_FALSE(archive.insert(Genome{{0.5}}, ObjectiveVector::infinite(), rng));
}

TEST_CASE("clone population with no variation yields one solution") {
  const auto inst = small_random(6, 2, 4);
  Nsga2Params p = quick_nsga2(1);
  p.crossover_probability = 0.0;
  p.mutation_probability = 0.0;
  Genome g = Genome::uniform(6, 0.25);
  p.initial.assign(p.population_size, g);
  const auto f = run_nsga2(inst, p, 0.5);
  REQUIRE(f.size() == 1);
  const auto d = decode(g, inst);
  REQUIRE(d);
  CHECK(f.solutions[0].design == d->design);
}

TEST_CASE("static swarm keeps the initial nondominated set") {
  const auto inst = small_random(6, 2, 5);
  MopsoParams p = quick_mopso(3);
  p.inertia = p.cognitive = p.social = 0.0;
  p.max_iterations = 0;
  const auto start = run_mopso(inst, p, 0.5);
  p.max_iterations = 40;
  CHECK(run_mopso(inst, p, 0.5) == start);
}

TEST_CASE("pure encircling keeps the archive nondominated") {
  const auto inst = constrained_random(6, 2, 6);
  MowoaParams p = quick_mowoa(4);
  p.a_max = 0.0;
  p.spiral_probability = 0.0;
  check_front(inst, run_mowoa(inst, p, 0.5), 0.5);
}

TEST_CASE("single-agent swarms") {
  const auto inst = small_random(5, 2, 7);
  MopsoParams mp = quick_mopso(1);
  mp.population_size = 1;
  const auto f = run_mopso(inst, mp, 0.5);
  CHECK(f.size() <= mp.max_iterations + 1);
  MowoaParams wp = quick_mowoa(1);
  wp.population_size = 1;
  CHECK(run_mowoa(inst, wp, 0.5).size() <= wp.max_iterations + 1);
}

TEST_CASE("invalid parameters") {
  const auto inst = small_random(5, 2, 7);
  Nsga2Params n = quick_nsga2(1);
  n.population_size = 1;
  CHECK_THROWS_AS(static_cast<void>(run_nsga2(inst, n, 0.5)), std::invalid_argument);
  n = quick_nsga2(1);
  n.mutation_probability = 1.5;
  CHECK_THROWS_AS(static_cast<void>(run_nsga2(inst, n, 0.5)), std::invalid_argument);
  MopsoParams m = quick_mopso(1);
  m.archive_capacity = 0;
  CHECK_THROWS_AS(static_cast<void>(run_mopso(inst, m, 0.5)), std::invalid_argument);
  MowoaParams w = quick_mowoa(1);
  w.population_size = 0;
  CHECK_THROWS_AS(static_cast<void>(run_mowoa(inst, w, 0.5)), std::invalid_argument);
}

TEST_CASE("same seed, same front, any worker count") {
  const auto inst = constrained_random(7, 3, 8);
  for (std::size_t workers : {1, 3}) {
    Nsga2Params n = quick_nsga2(9);
    MopsoParams m = quick_mopso(9);
    MowoaParams w = quick_mowoa(9);
    n.workers = m.workers = w.workers = 1;
    const auto a = std::make_tuple(run_nsga2(inst, n, 0.5), run_mopso(inst, m, 0.5), run_mowoa(inst, w, 0.5));
    n.workers = m.workers = w.workers = workers;
    const auto b = std::make_tuple(run_nsga2(inst, n, 0.5), run_mopso(inst, m, 0.5), run_mowoa(inst, w, 0.5));
    CHECK(a == b);
  }
  Nsga2Params other = quick_nsga2(10);
  CHECK_FALSE(run_nsga2(inst, other, 0.5) == run_nsga2(inst, quick_nsga2(9), 0.5));
}

TEST_CASE("fronts are feasible and never beat the oracle") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = seed == 2 ? constrained_random(5, 2, seed) : small_random(5, 2, seed);
    const auto oracle = brute_force_oracle(inst, 0.5);
    for (const auto& f : {run_nsga2(inst, quick_nsga2(seed), 0.5), run_mopso(inst, quick_mopso(seed), 0.5),
                          run_mowoa(inst, quick_mowoa(seed), 0.5)}) {
      check_front(inst, f, 0.5);
      for (const auto& s : f.solutions) CHECK_FALSE(strictly_dominates_any(s.objectives, oracle));
    }
  }
}

TEST_CASE("worker resolution") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
