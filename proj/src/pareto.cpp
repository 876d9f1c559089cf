#include "hubloc/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hubloc {

double round_objective(double v) {
  if (!std::isfinite(v)) return v;
  return std::round(v / kObjectiveResolution) * kObjectiveResolution;
}

ObjectiveVector rounded(const ObjectiveVector& v) {
  return {round_objective(v.z1), round_objective(v.z2), round_objective(v.z3)};
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t m = 0; m < 3; ++m) {
    if (a[m] > b[m]) return false;
    if (a[m] < b[m]) strict = true;
  }
  return strict;
}

bool dominates_rounded(const ObjectiveVector& a, const ObjectiveVector& b) {
  return dominates(rounded(a), rounded(b));
}

bool lex_less_rounded(const ObjectiveVector& a, const ObjectiveVector& b) {
  const ObjectiveVector ra = rounded(a);
  const ObjectiveVector rb = rounded(b);
  for (std::size_t m = 0; m < 3; ++m) {
    if (ra[m] != rb[m]) return ra[m] < rb[m];
  }
  return false;
}

std::vector<ObjectiveVector> ParetoFront::objectives() const {
  std::vector<ObjectiveVector> out;
  out.reserve(solutions.size());
  for (const auto& s : solutions) out.push_back(s.objectives);
  return out;
}

std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back(rounded(p));

  // After a stable lexicographic sort only earlier points can dominate later
  // ones, and equal points are adjacent.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t m = 0; m < 3; ++m) {
      if (r[a][m] != r[b][m]) return r[a][m] < r[b][m];
    }
    return false;
  });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    if (!r[idx].is_finite()) continue;
    bool drop = false;
    for (std::size_t k : kept) {
      if (r[k] == r[idx] || dominates(r[k], r[idx])) {
        drop = true;
        break;
      }
    }
    if (!drop) kept.push_back(idx);
  }
  return kept;
}

ParetoFront make_front(std::vector<EvaluatedSolution> candidates) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(candidates.size());
  for (const auto& c : candidates) pts.push_back(c.objectives);
  ParetoFront front;
  for (std::size_t idx : nondominated_indices(pts)) {
    front.solutions.push_back(std::move(candidates[idx]));
  }
  return front;
}

}  // namespace hubloc
