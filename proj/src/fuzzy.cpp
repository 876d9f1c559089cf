#include "hubloc/fuzzy.hpp"

#include <stdexcept>
#include <string>

namespace hubloc {

bool TrapezoidalFuzzyNumber::is_valid() const {
  return q1 >= 0.0 && q1 <= q2 && q2 <= q3 && q3 <= q4;
}

ExpectedInterval expected_interval(const TrapezoidalFuzzyNumber& q) {
  return {(q.q1 + q.q2) / 2.0, (q.q3 + q.q4) / 2.0};
}

double defuzzify(const TrapezoidalFuzzyNumber& q, double alpha_prime) {
  if (!(alpha_prime >= 0.0 && alpha_prime <= 1.0)) {
    throw std::invalid_argument("uncertainty rate must lie in [0,1], got " +
                                std::to_string(alpha_prime));
  }
  const ExpectedInterval e = expected_interval(q);
  return (1.0 - alpha_prime) * e.lower + alpha_prime * e.upper;
}

}  // namespace hubloc
