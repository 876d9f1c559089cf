#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hubloc/fuzzy.hpp"
#include "hubloc/matrix.hpp"

namespace hubloc {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

/// Absolute slack used when comparing times, distances and loads.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Capacitated single-allocation hub network with fuzzy origin-destination
/// demand. Indices 0..n-1 play every node role.
struct ProblemInstance {
  std::size_t n = 0;
  std::size_t p = 1;
  double omega = 0.0;

  std::vector<double> fixed_cost;
  std::vector<double> capacity;
  std::vector<double> handling_cost;

  Matrix<double> distance;
  Matrix<double> travel_time;
  Matrix<double> max_transfer_time;
  Matrix<double> unit_transport_cost;
  Matrix<TrapezoidalFuzzyNumber> demand;

  double alpha_discount = 1.0;
  double beta_discount = 1.0;

  Matrix<double> early_penalty;
  Matrix<double> late_penalty;
  Matrix<double> window_lower;
  Matrix<double> window_upper;

  double aircraft_capacity = 1.0;
  double lto_p1 = 0.0;
  double lto_p2 = 0.0;
  double ccd_rate_p1 = 0.0;
  double ccd_rate_p2 = 0.0;

  /// Zero-filled instance of the given size with unit discounts and
  /// unbounded caps; tests and the generator fill in the rest.
  static ProblemInstance zeros(std::size_t n, std::size_t p);

  bool operator==(const ProblemInstance&) const = default;
};

struct Violation {
  std::string code;
  std::string detail;
};

using ViolationReport = std::vector<Violation>;

/// Lists every broken instance invariant; empty means well formed.
ViolationReport validate_instance(const ProblemInstance& inst);

/// Hub-open flags plus the single hub each node is allocated to.
struct NetworkDesign {
  std::vector<char> hub_open;
  std::vector<std::size_t> assignment;

  /// Opens every node that appears in `assignment`; hubs must map to themselves.
  static NetworkDesign from_assignment(std::size_t n, const std::vector<std::size_t>& assignment);

  [[nodiscard]] std::size_t size() const { return assignment.size(); }
  [[nodiscard]] std::vector<std::size_t> hubs() const;
  [[nodiscard]] std::size_t hub_count() const;

  bool operator==(const NetworkDesign&) const = default;
};

enum class RouteKind : std::uint8_t { Direct, OneHub, TwoHub };

/// Origin-destination connection: direct, through one hub, or through two.
struct Route {
  RouteKind kind = RouteKind::Direct;
  std::size_t first = kNoNode;
  std::size_t second = kNoNode;

  static constexpr Route direct() { return {}; }
  static constexpr Route one_hub(std::size_t k) { return {RouteKind::OneHub, k, kNoNode}; }
  static constexpr Route two_hub(std::size_t k, std::size_t l) { return {RouteKind::TwoHub, k, l}; }

  [[nodiscard]] bool uses_hub() const { return kind != RouteKind::Direct; }

  bool operator==(const Route&) const = default;
};

/// One route per ordered pair i != j; the diagonal is unused.
class RoutePlan {
 public:
  RoutePlan() = default;
  explicit RoutePlan(std::size_t n) : routes_(n, n) {}

  [[nodiscard]] std::size_t size() const { return routes_.rows(); }
  Route& at(std::size_t i, std::size_t j) { return routes_(i, j); }
  [[nodiscard]] const Route& at(std::size_t i, std::size_t j) const { return routes_(i, j); }

  bool operator==(const RoutePlan&) const = default;

 private:
  Matrix<Route> routes_;
};

struct ObjectiveVector {
  double z1 = 0.0;  ///< cost
  double z2 = 0.0;  ///< emissions
  double z3 = 0.0;  ///< time-window penalty

  [[nodiscard]] double operator[](std::size_t m) const { return m == 0 ? z1 : (m == 1 ? z2 : z3); }
  double& operator[](std::size_t m) { return m == 0 ? z1 : (m == 1 ? z2 : z3); }

  static ObjectiveVector infinite() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf};
  }
  [[nodiscard]] bool is_finite() const;

  bool operator==(const ObjectiveVector&) const = default;
};

struct EvaluatedSolution {
  NetworkDesign design;
  RoutePlan plan;
  ObjectiveVector objectives;
  double alpha_prime = 0.5;

  bool operator==(const EvaluatedSolution&) const = default;
};

/// Legal routes for pair (i, j) under `design`, Direct first, each meeting
/// the pair's transfer-time cap.
std::vector<Route> feasible_routes(const ProblemInstance& inst, const NetworkDesign& design,
                                   std::size_t i, std::size_t j);

/// Violations of the design, route legality, hub capacity and time-cap
/// constraints for `sol`, with demand defuzzified at `alpha_prime`.
ViolationReport check_feasibility(const ProblemInstance& inst, const EvaluatedSolution& sol,
                                  double alpha_prime);

/// Design-only part of check_feasibility (allocation, hub count, radius).
ViolationReport check_design(const ProblemInstance& inst, const NetworkDesign& design);

/// Hub throughput implied by a plan; entry k is zero for closed hubs.
std::vector<double> hub_loads(const ProblemInstance& inst, const RoutePlan& plan, double alpha_prime);

}  // namespace hubloc
