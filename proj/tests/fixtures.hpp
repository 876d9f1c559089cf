#pragma once

#include <cstdint>
#include <vector>

#include "hubloc/generator.hpp"
#include "hubloc/model.hpp"

namespace hubloc::test {

inline TrapezoidalFuzzyNumber crisp(double v) { return TrapezoidalFuzzyNumber::crisp(v); }

// Symmetric distances and unit cost on every off-diagonal pair.
inline void set_distance(ProblemInstance& inst, std::size_t i, std::size_t j, double d) {
  inst.distance(i, j) = d;
  inst.distance(j, i) = d;
}

inline ProblemInstance priced(std::size_t n, std::size_t p, double unit_cost) {
  ProblemInstance inst = ProblemInstance::zeros(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) inst.unit_transport_cost(i, j) = unit_cost;
    }
  }
  return inst;
}

inline ProblemInstance small_random(std::size_t n, std::size_t p, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.p = p;
  spec.seed = seed;
  return generate(spec);
}

// Tightens capacities and time caps of a generated instance so that repair,
// the capacity constraint and the transfer-time cap all bind sometimes.
inline ProblemInstance constrained_random(std::size_t n, std::size_t p, std::uint64_t seed) {
  ProblemInstance inst = small_random(n, p, seed);
  for (std::size_t k = 0; k < n; ++k) inst.capacity[k] = 60.0 * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) inst.max_transfer_time(i, j) = 1.8 * inst.travel_time(i, j) + 4.0;
    }
  }
  return inst;
}

inline RoutePlan all_direct(std::size_t n) { return RoutePlan(n); }

}  // namespace hubloc::test
