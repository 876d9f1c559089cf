#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hubloc/model.hpp"
#include "hubloc/pareto.hpp"

namespace hubloc {

struct FrontMetrics {
  std::size_t npf = 0;  ///< number of Pareto solutions
  double msi = 0.0;     ///< maximum spread: diagonal of the objective bounding box
  double sm = 0.0;      ///< Schott spacing with city-block nearest-neighbour distances
  double cpt = 0.0;     ///< solver wall-clock seconds
};

/// Throws std::invalid_argument on an empty front.
FrontMetrics compute_metrics(const std::vector<ObjectiveVector>& front, double elapsed_seconds);
FrontMetrics compute_metrics(const ParetoFront& front, double elapsed_seconds);

/// Exact 3-objective hypervolume (minimization) dominated by `front` and
/// bounded by `reference`. Throws std::invalid_argument if some member is not
/// componentwise <= reference or any value is non-finite.
double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference);

/// Hypervolume after discarding members that are not <= reference; those
/// contribute nothing to the dominated region anyway.
double hypervolume_within(const std::vector<ObjectiveVector>& front,
                          const ObjectiveVector& reference);

enum class Direction { Benefit, Cost };

struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria;
  std::vector<std::vector<double>> values;  ///< values[alternative][criterion]
  std::vector<Direction> directions;
  std::vector<double> weights;

  /// Throws std::invalid_argument on shape mismatch, non-finite entries or
  /// weights that are negative or do not sum to 1.
  void validate() const;
};

struct TopsisResult {
  std::vector<double> closeness;      ///< CI per alternative, input order
  std::vector<std::size_t> ranking;   ///< alternative indices, best first
};

/// Vector-normalized, weighted TOPSIS. Ties in CI keep input order.
/// Throws std::invalid_argument on an all-zero column.
TopsisResult topsis_rank(const DecisionMatrix& matrix);

/// NPF and MSI benefit, SM and CPT cost, weight 0.25 each.
DecisionMatrix metrics_matrix(const std::vector<std::string>& algorithms,
                              const std::vector<FrontMetrics>& metrics);

}  // namespace hubloc
