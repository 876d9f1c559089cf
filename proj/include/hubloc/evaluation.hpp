#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "hubloc/model.hpp"

namespace hubloc {

/// Thrown by evaluate() when the (design, plan) pair breaks a constraint.
class InfeasibleSolution : public std::runtime_error {
 public:
  InfeasibleSolution(const std::string& what, ViolationReport violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}
  [[nodiscard]] const ViolationReport& violations() const { return violations_; }

 private:
  ViolationReport violations_;
};

double route_time(const ProblemInstance& inst, const Route& route, std::size_t i, std::size_t j);

/// ceil(q / phi); throws std::invalid_argument for phi <= 0 or q < 0.
std::int64_t aircraft_count(double q, double phi);

/// Contribution of one routed pair to each objective. Fixed hub costs are not
/// included; they belong to the design.
ObjectiveVector pair_objectives(const ProblemInstance& inst, const Route& route, std::size_t i,
                                std::size_t j, double demand);

double fixed_cost(const ProblemInstance& inst, const NetworkDesign& design);

double eval_cost(const ProblemInstance& inst, const NetworkDesign& design, const RoutePlan& plan,
                 double alpha_prime);
double eval_emissions(const ProblemInstance& inst, const NetworkDesign& design,
                      const RoutePlan& plan, double alpha_prime);
double eval_time_penalty(const ProblemInstance& inst, const NetworkDesign& design,
                         const RoutePlan& plan);

/// Emissions split by pollutant group; z2 is their sum.
struct EmissionBreakdown {
  double group1 = 0.0;
  double group2 = 0.0;
};
EmissionBreakdown eval_emission_breakdown(const ProblemInstance& inst, const RoutePlan& plan,
                                          double alpha_prime);

/// All three objectives. Throws InfeasibleSolution if the pair is infeasible.
ObjectiveVector evaluate(const ProblemInstance& inst, const NetworkDesign& design,
                         const RoutePlan& plan, double alpha_prime);

/// All three objectives without the feasibility pass; the caller guarantees
/// legality. Sums pairs in row-major order, so results match evaluate().
ObjectiveVector evaluate_unchecked(const ProblemInstance& inst, const NetworkDesign& design,
                                   const RoutePlan& plan, double alpha_prime);

}  // namespace hubloc
