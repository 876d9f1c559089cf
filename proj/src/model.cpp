#include "hubloc/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "hubloc/evaluation.hpp"

namespace hubloc {

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << '(' << i << ',' << j << ')';
  return os.str();
}

std::string node_label(std::size_t i) { return "(" + std::to_string(i) + ")"; }

void check_vector(ViolationReport& report, const std::vector<double>& v, std::size_t n,
                  const char* name, bool allow_infinite = false) {
  if (v.size() != n) {
    report.push_back({"dimension", std::string(name) + " has " + std::to_string(v.size()) +
                                       " entries, expected " + std::to_string(n)});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = allow_infinite ? !std::isnan(v[i]) : std::isfinite(v[i]);
    if (!ok || v[i] < 0.0) {
      report.push_back({"nonnegative", std::string(name) + node_label(i)});
    }
  }
}

bool check_matrix_shape(ViolationReport& report, std::size_t rows, std::size_t cols,
                        std::size_t n, const char* name) {
  if (rows != n || cols != n) {
    report.push_back({"dimension", std::string(name) + " is " + std::to_string(rows) + "x" +
                                       std::to_string(cols) + ", expected " + std::to_string(n) +
                                       "x" + std::to_string(n)});
    return false;
  }
  return true;
}

void check_matrix(ViolationReport& report, const Matrix<double>& m, std::size_t n,
                  const char* name) {
  if (!check_matrix_shape(report, m.rows(), m.cols(), n, name)) return;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j)) || m(i, j) < 0.0) {
        report.push_back({"nonnegative", std::string(name) + pair_label(i, j)});
      }
    }
  }
}

void check_scalar(ViolationReport& report, double v, const char* name, bool strictly_positive) {
  if (!std::isfinite(v) || v < 0.0 || (strictly_positive && v == 0.0)) {
    report.push_back({strictly_positive ? "positive" : "nonnegative", name});
  }
}

}  // namespace

ProblemInstance ProblemInstance::zeros(std::size_t n, std::size_t p) {
  ProblemInstance inst;
  inst.n = n;
  inst.p = p;
  inst.omega = std::numeric_limits<double>::infinity();
  inst.fixed_cost.assign(n, 0.0);
  inst.capacity.assign(n, std::numeric_limits<double>::infinity());
  inst.handling_cost.assign(n, 0.0);
  inst.distance = Matrix<double>(n, n, 0.0);
  inst.travel_time = Matrix<double>(n, n, 0.0);
  inst.max_transfer_time = Matrix<double>(n, n, std::numeric_limits<double>::infinity());
  inst.unit_transport_cost = Matrix<double>(n, n, 0.0);
  inst.demand = Matrix<TrapezoidalFuzzyNumber>(n, n);
  inst.early_penalty = Matrix<double>(n, n, 0.0);
  inst.late_penalty = Matrix<double>(n, n, 0.0);
  inst.window_lower = Matrix<double>(n, n, 0.0);
  inst.window_upper = Matrix<double>(n, n, std::numeric_limits<double>::infinity());
  return inst;
}

ViolationReport validate_instance(const ProblemInstance& inst) {
  ViolationReport report;
  const std::size_t n = inst.n;
  if (n == 0) report.push_back({"node-count", "instance has no nodes"});
  if (inst.p < 1 || inst.p > n) {
    report.push_back({"hub-limit", "p=" + std::to_string(inst.p) + " outside [1," +
                                       std::to_string(n) + "]"});
  }
  if (std::isnan(inst.omega) || inst.omega < 0.0) report.push_back({"nonnegative", "omega"});

  check_vector(report, inst.fixed_cost, n, "fixed_cost");
  check_vector(report, inst.capacity, n, "capacity", true);
  check_vector(report, inst.handling_cost, n, "handling_cost");

  // Caps may be +inf (unbounded); only NaN and negatives are rejected.
  if (check_matrix_shape(report, inst.max_transfer_time.rows(), inst.max_transfer_time.cols(), n,
                         "max_transfer_time")) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double s = inst.max_transfer_time(i, j);
        if (std::isnan(s) || s < 0.0) {
          report.push_back({"nonnegative", "max_transfer_time" + pair_label(i, j)});
        }
      }
    }
  }
  check_matrix(report, inst.distance, n, "distance");
  check_matrix(report, inst.travel_time, n, "travel_time");
  check_matrix(report, inst.unit_transport_cost, n, "unit_transport_cost");
  check_matrix(report, inst.early_penalty, n, "early_penalty");
  check_matrix(report, inst.late_penalty, n, "late_penalty");
  check_matrix(report, inst.window_lower, n, "window_lower");

  if (inst.distance.rows() == n && inst.distance.cols() == n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.distance(i, i) != 0.0) {
        report.push_back({"distance-diagonal", "distance" + pair_label(i, i)});
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (inst.distance(i, j) != inst.distance(j, i)) {
          report.push_back({"distance-symmetry", "distance" + pair_label(i, j)});
        }
      }
    }
  }

  if (check_matrix_shape(report, inst.window_upper.rows(), inst.window_upper.cols(), n,
                         "window_upper") &&
      inst.window_lower.rows() == n && inst.window_lower.cols() == n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double hi = inst.window_upper(i, j);
        if (std::isnan(hi) || hi < 0.0) {
          report.push_back({"nonnegative", "window_upper" + pair_label(i, j)});
        }
        if (inst.window_lower(i, j) > hi) {
          report.push_back({"window-order", "window" + pair_label(i, j)});
        }
      }
    }
  }

  if (check_matrix_shape(report, inst.demand.rows(), inst.demand.cols(), n, "demand")) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const TrapezoidalFuzzyNumber& q = inst.demand(i, j);
        if (!q.is_valid() || !std::isfinite(q.q4)) {
          report.push_back({"demand-trapezoid", "demand" + pair_label(i, j)});
        }
        if (i == j && !(q == TrapezoidalFuzzyNumber{})) {
          report.push_back({"demand-diagonal", "demand" + pair_label(i, i)});
        }
      }
    }
  }

  if (!(inst.alpha_discount > 0.0 && inst.alpha_discount <= 1.0)) {
    report.push_back({"discount", "alpha_discount outside (0,1]"});
  }
  if (!(inst.beta_discount > 0.0 && inst.beta_discount <= 1.0)) {
    report.push_back({"discount", "beta_discount outside (0,1]"});
  }
  check_scalar(report, inst.aircraft_capacity, "aircraft_capacity", true);
  check_scalar(report, inst.lto_p1, "lto_p1", false);
  check_scalar(report, inst.lto_p2, "lto_p2", false);
  check_scalar(report, inst.ccd_rate_p1, "ccd_rate_p1", false);
  check_scalar(report, inst.ccd_rate_p2, "ccd_rate_p2", false);
  return report;
}

NetworkDesign NetworkDesign::from_assignment(std::size_t n,
                                             const std::vector<std::size_t>& assignment) {
  NetworkDesign d;
  d.hub_open.assign(n, 0);
  d.assignment = assignment;
  for (std::size_t k : assignment) {
    if (k < n) d.hub_open[k] = 1;
  }
  return d;
}

std::vector<std::size_t> NetworkDesign::hubs() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < hub_open.size(); ++k) {
    if (hub_open[k]) out.push_back(k);
  }
  return out;
}

std::size_t NetworkDesign::hub_count() const {
  std::size_t c = 0;
  for (char h : hub_open) c += h ? 1 : 0;
  return c;
}

bool ObjectiveVector::is_finite() const {
  return std::isfinite(z1) && std::isfinite(z2) && std::isfinite(z3);
}

std::vector<Route> feasible_routes(const ProblemInstance& inst, const NetworkDesign& design,
                                   std::size_t i, std::size_t j) {
  std::vector<Route> routes;
  const double cap = inst.max_transfer_time(i, j) + kFeasibilityTolerance;
  auto admit = [&](const Route& r) {
    if (route_time(inst, r, i, j) <= cap) routes.push_back(r);
  };
  admit(Route::direct());
  const std::size_t k = design.assignment[i];
  const std::size_t l = design.assignment[j];
  if (k == l) {
    admit(Route::one_hub(k));
  } else {
    admit(Route::two_hub(k, l));
  }
  return routes;
}

ViolationReport check_design(const ProblemInstance& inst, const NetworkDesign& design) {
  ViolationReport report;
  const std::size_t n = inst.n;
  if (design.hub_open.size() != n || design.assignment.size() != n) {
    report.push_back({"dimension", "design does not match instance size"});
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = design.assignment[i];
    if (k >= n) {
      report.push_back({"assignment-count", "node" + node_label(i) + " has no valid hub"});
      continue;
    }
    if (!design.hub_open[k]) {
      report.push_back({"assignment-closed-hub", "node" + node_label(i) + " -> closed hub " +
                                                     std::to_string(k) + ""});
    }
    if (design.hub_open[i] && k != i) {
      report.push_back({"hub-self-assignment", "hub" + node_label(i) + " assigned to " +
                                                   std::to_string(k)});
    }
    if (k != i && inst.distance(i, k) > inst.omega + kFeasibilityTolerance) {
      report.push_back({"assignment-distance", "node" + node_label(i) + " -> hub " +
                                                   std::to_string(k) + " beyond omega"});
    }
  }
  const std::size_t hubs = design.hub_count();
  if (hubs > inst.p) {
    report.push_back({"hub-count", std::to_string(hubs) + " hubs open, limit " +
                                       std::to_string(inst.p) + ""});
  }
  if (hubs == 0) report.push_back({"hub-count", "no hub open"});
  return report;
}

std::vector<double> hub_loads(const ProblemInstance& inst, const RoutePlan& plan,
                              double alpha_prime) {
  std::vector<double> load(inst.n, 0.0);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Route& r = plan.at(i, j);
      if (!r.uses_hub()) continue;
      const double q = defuzzify(inst.demand(i, j), alpha_prime);
      if (r.first < inst.n) load[r.first] += q;
      if (r.kind == RouteKind::TwoHub && r.second < inst.n) load[r.second] += q;
    }
  }
  return load;
}

ViolationReport check_feasibility(const ProblemInstance& inst, const EvaluatedSolution& sol,
                                  double alpha_prime) {
  ViolationReport report = check_design(inst, sol.design);
  if (!report.empty() && report.front().code == "dimension") return report;
  if (sol.plan.size() != inst.n) {
    report.push_back({"dimension", "route plan does not match instance size"});
    return report;
  }
  const NetworkDesign& d = sol.design;
  const std::size_t n = inst.n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Route& r = sol.plan.at(i, j);
      const std::string where = pair_label(i, j);
      switch (r.kind) {
        case RouteKind::Direct:
          break;
        case RouteKind::OneHub:
          if (r.first >= n || d.assignment[i] != r.first || d.assignment[j] != r.first) {
            report.push_back({"one-hub-assignment", where + " via hub " + std::to_string(r.first) +
                                                        ""});
            continue;
          }
          break;
        case RouteKind::TwoHub:
          if (r.first >= n || r.second >= n || r.first == r.second ||
              d.assignment[i] != r.first || d.assignment[j] != r.second || !d.hub_open[r.first] ||
              !d.hub_open[r.second]) {
            report.push_back({"two-hub-assignment", where + " via hubs " +
                                                        std::to_string(r.first) + "->" +
                                                        std::to_string(r.second) + ""});
            continue;
          }
          break;
      }
      if (route_time(inst, r, i, j) > inst.max_transfer_time(i, j) + kFeasibilityTolerance) {
        report.push_back({"route-time", where + " exceeds transfer-time cap"});
      }
    }
  }
  if (!report.empty()) return report;
  const std::vector<double> load = hub_loads(inst, sol.plan, alpha_prime);
  for (std::size_t k = 0; k < n; ++k) {
    if (load[k] > 0.0 && !d.hub_open[k]) {
      report.push_back({"closed-hub-flow", "hub" + node_label(k) + " closed but carries flow"});
    } else if (d.hub_open[k] && load[k] > inst.capacity[k] + kFeasibilityTolerance) {
      std::ostringstream os;
      os << "hub" << node_label(k) << " load " << load[k] << " > capacity " << inst.capacity[k]
         << "";
      report.push_back({"hub-capacity", os.str()});
    }
  }
  return report;
}

}  // namespace hubloc
