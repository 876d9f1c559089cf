#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hubloc/model.hpp"
#include "hubloc/pareto.hpp"

namespace hubloc {

inline constexpr std::uint64_t kDefaultConfigurationBudget = 100'000'000;

/// Raised when enumeration would exceed its configuration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t count, std::uint64_t budget);
  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t count_;
  std::uint64_t budget_;
};

/// Raised when no (design, plan) satisfies every constraint.
class NoFeasibleSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{h=1..p} C(n,h) * h^(n-h), saturating at UINT64_MAX.
std::uint64_t configuration_count_bound(std::size_t n, std::size_t p);

/// Calls `visit` for every design satisfying the allocation constraints:
/// hub sets of size 1..p in lexicographic order, hubs self-assigned, each
/// spoke on an open hub within omega. Designs with an unassignable spoke are
/// skipped. Throws BudgetExceeded before visiting anything if the count bound
/// exceeds `budget`.
void for_each_configuration(const ProblemInstance& inst,
                            const std::function<void(const NetworkDesign&)>& visit,
                            std::uint64_t budget = kDefaultConfigurationBudget);

std::vector<NetworkDesign> enumerate_configurations(
    const ProblemInstance& inst, std::uint64_t budget = kDefaultConfigurationBudget);

/// Cheapest routing (by z1, ties by z2 then z3) for a fixed design subject to
/// z2 <= eps2, z3 <= eps3, hub capacities and transfer-time caps. Returns
/// nullopt when no routing satisfies every cap.
std::optional<EvaluatedSolution> solve_routing(const ProblemInstance& inst,
                                               const NetworkDesign& design, double eps2,
                                               double eps3, double alpha_prime);

/// Bounds of the epsilon-constraint sweep over (z2, z3). The segment counts are
/// inputs; the bound lists are filled in from the payoff table.
struct EpsilonGrid {
  std::size_t segments_z2 = 6;
  std::size_t segments_z3 = 6;
  std::vector<double> eps2;
  std::vector<double> eps3;

  /// `segments` equally spaced bounds per objective ending at the maximum;
  /// the loosest cell admits every payoff-table row.
  static EpsilonGrid span(std::size_t segments_z2, std::size_t segments_z3, double min_z2,
                          double max_z2, double min_z3, double max_z3);
};

/// Lexicographic individual optima: row m minimizes objective m first and
/// breaks ties on the remaining objectives in index order.
struct PayoffTable {
  std::array<EvaluatedSolution, 3> rows;
  [[nodiscard]] double min_of(std::size_t m) const;
  [[nodiscard]] double max_of(std::size_t m) const;
};

struct GridCell {
  double eps2 = 0.0;
  double eps3 = 0.0;
  std::optional<EvaluatedSolution> solution;
};

struct EpsilonConstraintResult {
  PayoffTable payoff;
  EpsilonGrid grid;
  std::vector<GridCell> cells;  ///< row-major over (eps2, eps3)
  ParetoFront front;
};

/// Full epsilon-constraint run: payoff table, grid, one lexicographic
/// min-z1 solve per cell, dominance filtering. Throws BudgetExceeded, and
/// NoFeasibleSolution if the instance has no feasible solution at all.
EpsilonConstraintResult run_epsilon_constraint(const ProblemInstance& inst, EpsilonGrid grid,
                                               double alpha_prime,
                                               std::uint64_t budget = kDefaultConfigurationBudget);

ParetoFront epsilon_constraint_front(const ProblemInstance& inst, const EpsilonGrid& grid,
                                     double alpha_prime,
                                     std::uint64_t budget = kDefaultConfigurationBudget);

/// Lexicographic optimum over all designs: minimizes objectives in `order`
/// subject to objective m <= eps[m]. nullopt if nothing satisfies the caps.
std::optional<EvaluatedSolution> solve_lexicographic(
    const ProblemInstance& inst, std::array<std::size_t, 3> order, std::array<double, 3> eps,
    double alpha_prime, std::uint64_t budget = kDefaultConfigurationBudget);

inline constexpr std::size_t kOracleMaxNodes = 6;

/// Exact nondominated set of every feasible (design, plan), for n <= 6.
/// Designs come from scanning all n^n allocation vectors; routings from a
/// dynamic program over pairs that discards a partial plan only when another
/// partial plan is no worse in every objective and in every hub load that can
/// still matter. Throws std::invalid_argument for n > 6.
ParetoFront brute_force_oracle(const ProblemInstance& inst, double alpha_prime);

}  // namespace hubloc
