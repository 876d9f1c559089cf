#include "hubloc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hubloc {

FrontMetrics compute_metrics(const std::vector<ObjectiveVector>& front, double elapsed_seconds) {
  if (front.empty()) throw std::invalid_argument("metrics of an empty front");
  FrontMetrics out;
  out.npf = front.size();
  out.cpt = elapsed_seconds;

  double spread = 0.0;
  for (std::size_t m = 0; m < 3; ++m) {
    double lo = front[0][m];
    double hi = front[0][m];
    for (const auto& v : front) {
      lo = std::min(lo, v[m]);
      hi = std::max(hi, v[m]);
    }
    spread += (hi - lo) * (hi - lo);
  }
  out.msi = std::sqrt(spread);

  if (front.size() > 1) {
    std::vector<double> d(front.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < front.size(); ++i) {
      for (std::size_t j = 0; j < front.size(); ++j) {
        if (i == j) continue;
        double city = 0.0;
        for (std::size_t m = 0; m < 3; ++m) city += std::fabs(front[i][m] - front[j][m]);
        d[i] = std::min(d[i], city);
      }
    }
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    out.sm = std::sqrt(ss / static_cast<double>(d.size() - 1));
  }
  return out;
}

FrontMetrics compute_metrics(const ParetoFront& front, double elapsed_seconds) {
  return compute_metrics(front.objectives(), elapsed_seconds);
}

namespace {

// Area dominated by 2-D points (x, y) within [.., rx] x [.., ry].
double area_2d(std::vector<std::pair<double, double>> pts, double rx, double ry) {
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double y_best = ry;
  for (const auto& [x, y] : pts) {
    if (y < y_best) {
      area += (rx - x) * (y_best - y);
      y_best = y;
    }
  }
  return area;
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference) {
  if (!reference.is_finite()) throw std::invalid_argument("hypervolume reference must be finite");
  for (const auto& v : front) {
    if (!v.is_finite()) throw std::invalid_argument("hypervolume of a non-finite point");
    if (v.z1 > reference.z1 || v.z2 > reference.z2 || v.z3 > reference.z3) {
      throw std::invalid_argument("hypervolume reference is not weakly dominated by every member");
    }
  }
  // Sweep z3 upward; each slab's cross-section is the 2-D area of the
  // points already passed.
  std::vector<ObjectiveVector> pts = front;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.z3 < b.z3; });
  double volume = 0.0;
  std::vector<std::pair<double, double>> slice;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slice.emplace_back(pts[i].z1, pts[i].z2);
    const double top = i + 1 < pts.size() ? pts[i + 1].z3 : reference.z3;
    if (top > pts[i].z3) volume += area_2d(slice, reference.z1, reference.z2) * (top - pts[i].z3);
  }
  return volume;
}

double hypervolume_within(const std::vector<ObjectiveVector>& front,
                          const ObjectiveVector& reference) {
  std::vector<ObjectiveVector> inside;
  for (const auto& v : front) {
    if (v.is_finite() && v.z1 <= reference.z1 && v.z2 <= reference.z2 && v.z3 <= reference.z3) {
      inside.push_back(v);
    }
  }
  return hypervolume(inside, reference);
}

void DecisionMatrix::validate() const {
  const std::size_t c = criteria.size();
  if (alternatives.empty() || c == 0) throw std::invalid_argument("decision matrix is empty");
  if (values.size() != alternatives.size()) {
    throw std::invalid_argument("decision matrix row count does not match alternatives");
  }
  for (const auto& row : values) {
    if (row.size() != c) throw std::invalid_argument("decision matrix row has wrong length");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("decision matrix entry is not finite");
    }
  }
  if (directions.size() != c || weights.size() != c) {
    throw std::invalid_argument("directions and weights must match the criteria");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
}

TopsisResult topsis_rank(const DecisionMatrix& mx) {
  mx.validate();
  const std::size_t a = mx.alternatives.size();
  const std::size_t c = mx.criteria.size();
  std::vector<std::vector<double>> v(a, std::vector<double>(c));
  std::vector<double> ideal(c);
  std::vector<double> anti(c);
  for (std::size_t k = 0; k < c; ++k) {
    double norm = 0.0;
    for (std::size_t i = 0; i < a; ++i) norm += mx.values[i][k] * mx.values[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::invalid_argument("criterion '" + mx.criteria[k] + "' is all zero");
    for (std::size_t i = 0; i < a; ++i) v[i][k] = mx.weights[k] * mx.values[i][k] / norm;
    double lo = v[0][k];
    double hi = v[0][k];
    for (std::size_t i = 0; i < a; ++i) {
      lo = std::min(lo, v[i][k]);
      hi = std::max(hi, v[i][k]);
    }
    const bool benefit = mx.directions[k] == Direction::Benefit;
    ideal[k] = benefit ? hi : lo;
    anti[k] = benefit ? lo : hi;
  }
  TopsisResult out;
  out.closeness.resize(a);
  for (std::size_t i = 0; i < a; ++i) {
    double dp = 0.0;
    double dm = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      dp += (v[i][k] - ideal[k]) * (v[i][k] - ideal[k]);
      dm += (v[i][k] - anti[k]) * (v[i][k] - anti[k]);
    }
    dp = std::sqrt(dp);
    dm = std::sqrt(dm);
    out.closeness[i] = dp + dm == 0.0 ? 0.5 : dm / (dp + dm);
  }
  out.ranking.resize(a);
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](std::size_t x, std::size_t y) {
    return out.closeness[x] > out.closeness[y];
  });
  return out;
}

DecisionMatrix metrics_matrix(const std::vector<std::string>& algorithms,
                              const std::vector<FrontMetrics>& metrics) {
  DecisionMatrix mx;
  mx.alternatives = algorithms;
  mx.criteria = {"NPF", "MSI", "SM", "CPT"};
  mx.directions = {Direction::Benefit, Direction::Benefit, Direction::Cost, Direction::Cost};
  mx.weights = {0.25, 0.25, 0.25, 0.25};
  for (const auto& m : metrics) {
    mx.values.push_back({static_cast<double>(m.npf), m.msi, m.sm, m.cpt});
  }
  return mx;
}

}  // namespace hubloc
