#include "hubloc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hubloc {

double route_time(const ProblemInstance& inst, const Route& route, std::size_t i, std::size_t j) {
  const Matrix<double>& t = inst.travel_time;
  switch (route.kind) {
    case RouteKind::Direct:
      return t(i, j);
    case RouteKind::OneHub:
      return t(i, route.first) + t(route.first, j);
    case RouteKind::TwoHub:
      return t(i, route.first) + t(route.first, route.second) + t(route.second, j);
  }
  return t(i, j);
}

std::int64_t aircraft_count(double q, double phi) {
  if (!(phi > 0.0)) {
    throw std::invalid_argument("aircraft capacity must be positive, got " + std::to_string(phi));
  }
  if (q < 0.0) throw std::invalid_argument("demand must be nonnegative");
  if (q == 0.0) return 0;
  // Absorb representation noise such as 100.00000000000001 / 50.
  const double ratio = q / phi;
  return static_cast<std::int64_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

ObjectiveVector pair_objectives(const ProblemInstance& inst, const Route& route, std::size_t i,
                                std::size_t j, double q) {
  const Matrix<double>& d = inst.distance;
  const Matrix<double>& c = inst.unit_transport_cost;
  const double beta = inst.beta_discount;
  const double alpha = inst.alpha_discount;

  double transport = 0.0;
  double path_length = 0.0;
  double legs = 1.0;
  switch (route.kind) {
    case RouteKind::Direct:
      transport = c(i, j) * d(i, j) * q;
      path_length = d(i, j);
      break;
    case RouteKind::OneHub: {
      const std::size_t k = route.first;
      transport = beta * (c(i, k) * d(i, k) + c(k, j) * d(k, j)) * q + inst.handling_cost[k] * q;
      path_length = d(i, k) + d(k, j);
      legs = 2.0;
      break;
    }
    case RouteKind::TwoHub: {
      const std::size_t k = route.first;
      const std::size_t l = route.second;
      transport = (beta * (c(i, k) * d(i, k) + c(l, j) * d(l, j)) + alpha * c(k, l) * d(k, l)) * q +
                  (inst.handling_cost[k] + inst.handling_cost[l]) * q;
      path_length = d(i, k) + d(k, l) + d(l, j);
      legs = 3.0;
      break;
    }
  }

  const double m = static_cast<double>(aircraft_count(q, inst.aircraft_capacity));
  const double emissions = (legs * inst.lto_p1 + inst.ccd_rate_p1 * path_length) * m +
                           (legs * inst.lto_p2 + inst.ccd_rate_p2 * path_length) * m;

  const double t = route_time(inst, route, i, j);
  const double penalty = inst.early_penalty(i, j) * std::max(0.0, inst.window_lower(i, j) - t) +
                         inst.late_penalty(i, j) * std::max(0.0, t - inst.window_upper(i, j));
  return {transport, emissions, penalty};
}

double fixed_cost(const ProblemInstance& inst, const NetworkDesign& design) {
  double total = 0.0;
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (design.hub_open[k]) total += inst.fixed_cost[k];
  }
  return total;
}

ObjectiveVector evaluate_unchecked(const ProblemInstance& inst, const NetworkDesign& design,
                                   const RoutePlan& plan, double alpha_prime) {
  ObjectiveVector total;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const double q = defuzzify(inst.demand(i, j), alpha_prime);
      const ObjectiveVector part = pair_objectives(inst, plan.at(i, j), i, j, q);
      total.z1 += part.z1;
      total.z2 += part.z2;
      total.z3 += part.z3;
    }
  }
  total.z1 += fixed_cost(inst, design);
  return total;
}

double eval_cost(const ProblemInstance& inst, const NetworkDesign& design, const RoutePlan& plan,
                 double alpha_prime) {
  return evaluate_unchecked(inst, design, plan, alpha_prime).z1;
}

double eval_emissions(const ProblemInstance& inst, const NetworkDesign& design,
                      const RoutePlan& plan, double alpha_prime) {
  return evaluate_unchecked(inst, design, plan, alpha_prime).z2;
}

double eval_time_penalty(const ProblemInstance& inst, const NetworkDesign& design,
                         const RoutePlan& plan) {
  // Penalties do not depend on demand, so any valid rate gives the same sum.
  return evaluate_unchecked(inst, design, plan, 0.0).z3;
}

EmissionBreakdown eval_emission_breakdown(const ProblemInstance& inst, const RoutePlan& plan,
                                          double alpha_prime) {
  EmissionBreakdown out;
  const Matrix<double>& d = inst.distance;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Route& r = plan.at(i, j);
      const double q = defuzzify(inst.demand(i, j), alpha_prime);
      const double m = static_cast<double>(aircraft_count(q, inst.aircraft_capacity));
      double length = d(i, j);
      double legs = 1.0;
      if (r.kind == RouteKind::OneHub) {
        length = d(i, r.first) + d(r.first, j);
        legs = 2.0;
      } else if (r.kind == RouteKind::TwoHub) {
        length = d(i, r.first) + d(r.first, r.second) + d(r.second, j);
        legs = 3.0;
      }
      out.group1 += (legs * inst.lto_p1 + inst.ccd_rate_p1 * length) * m;
      out.group2 += (legs * inst.lto_p2 + inst.ccd_rate_p2 * length) * m;
    }
  }
  return out;
}

ObjectiveVector evaluate(const ProblemInstance& inst, const NetworkDesign& design,
                         const RoutePlan& plan, double alpha_prime) {
  EvaluatedSolution probe{design, plan, {}, alpha_prime};
  ViolationReport violations = check_feasibility(inst, probe, alpha_prime);
  if (!violations.empty()) {
    const std::string what =
        "infeasible solution: " + violations.front().code + " " + violations.front().detail;
    throw InfeasibleSolution(what, std::move(violations));
  }
  return evaluate_unchecked(inst, design, plan, alpha_prime);
}

}  // namespace hubloc
