#pragma once

namespace hubloc {

/// Four-point trapezoidal fuzzy quantity (q1 <= q2 <= q3 <= q4, all >= 0).
struct TrapezoidalFuzzyNumber {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double q4 = 0.0;

  static TrapezoidalFuzzyNumber crisp(double v) { return {v, v, v, v}; }

  [[nodiscard]] bool is_valid() const;

  bool operator==(const TrapezoidalFuzzyNumber&) const = default;
};

struct ExpectedInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Expected interval of a trapezoid: ((q1+q2)/2, (q3+q4)/2).
ExpectedInterval expected_interval(const TrapezoidalFuzzyNumber& q);

/// Crisp demand at uncertainty rate alpha_prime: the convex combination
/// (1 - a) * lower + a * upper of the expected interval endpoints.
/// Throws std::invalid_argument unless 0 <= alpha_prime <= 1.
double defuzzify(const TrapezoidalFuzzyNumber& q, double alpha_prime);

}  // namespace hubloc
