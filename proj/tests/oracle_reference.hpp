#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hubloc/evaluation.hpp"
#include "hubloc/pareto.hpp"

namespace hubloc::test {

// Every allocation vector and every route combination, filtered by
// check_feasibility. Exponential; only for n <= 4.
inline ParetoFront literal_front(const ProblemInstance& inst, double alpha_prime) {
  const std::size_t n = inst.n;
  std::vector<EvaluatedSolution> all;
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t)> alloc = [&](std::size_t i) {
    if (i == n) {
      for (std::size_t k = 0; k < n; ++k) {
        if (a[a[k]] != a[k]) return;
      }
      const auto design = NetworkDesign::from_assignment(n, a);
      if (!check_design(inst, design).empty()) return;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      std::vector<std::vector<Route>> options;
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
          if (s == t) continue;
          pairs.emplace_back(s, t);
          options.push_back({Route::direct()});
          if (a[s] == a[t]) {
            options.back().push_back(Route::one_hub(a[s]));
          } else {
            options.back().push_back(Route::two_hub(a[s], a[t]));
          }
        }
      }
      EvaluatedSolution sol;
      sol.design = design;
      sol.plan = RoutePlan(n);
      sol.alpha_prime = alpha_prime;
      std::function<void(std::size_t)> route = [&](std::size_t q) {
        if (q == pairs.size()) {
          if (!check_feasibility(inst, sol, alpha_prime).empty()) return;
          sol.objectives = evaluate(inst, sol.design, sol.plan, alpha_prime);
          all.push_back(sol);
          return;
        }
        for (const Route& r : options[q]) {
          sol.plan.at(pairs[q].first, pairs[q].second) = r;
          route(q + 1);
        }
      };
      route(0);
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      a[i] = k;
      alloc(i + 1);
    }
  };
  alloc(0);
  return make_front(std::move(all));
}

// Minimum rounded z1 over front members meeting both caps (the front is
// complete, so this is the constrained optimum over all feasible solutions).
inline std::optional<double> constrained_min_z1(const ParetoFront& oracle, double eps2, double eps3) {
  std::optional<double> best;
  for (const auto& s : oracle.solutions) {
    const auto r = rounded(s.objectives);
    if (r.z2 <= round_objective(eps2) && r.z3 <= round_objective(eps3)) {
      if (!best || r.z1 < *best) best = r.z1;
    }
  }
  return best;
}

inline bool strictly_dominates_any(const ObjectiveVector& v, const ParetoFront& front) {
  for (const auto& s : front.solutions) {
    if (dominates_rounded(v, s.objectives)) return true;
  }
  return false;
}

}  // namespace hubloc::test
