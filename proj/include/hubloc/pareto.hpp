#pragma once

#include <cstddef>
#include <vector>

#include "hubloc/model.hpp"

namespace hubloc {

/// Objectives are compared after rounding to this grid.
inline constexpr double kObjectiveResolution = 1e-6;

double round_objective(double v);
ObjectiveVector rounded(const ObjectiveVector& v);

/// a <= b componentwise with at least one strict inequality (minimization).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// dominates() applied to the rounded vectors.
bool dominates_rounded(const ObjectiveVector& a, const ObjectiveVector& b);

/// Lexicographic (z1, z2, z3) order on rounded vectors.
bool lex_less_rounded(const ObjectiveVector& a, const ObjectiveVector& b);

struct ParetoFront {
  std::vector<EvaluatedSolution> solutions;

  [[nodiscard]] std::size_t size() const { return solutions.size(); }
  [[nodiscard]] bool empty() const { return solutions.empty(); }
  [[nodiscard]] std::vector<ObjectiveVector> objectives() const;

  bool operator==(const ParetoFront&) const = default;
};

/// Drops non-finite and dominated members, keeps the first of each group of
/// equal rounded vectors, and sorts the rest lexicographically by (z1,z2,z3).
ParetoFront make_front(std::vector<EvaluatedSolution> candidates);

/// Indices of the nondominated members of `points` (rounded comparison,
/// duplicates collapsed to their first occurrence).
std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& points);

}  // namespace hubloc
