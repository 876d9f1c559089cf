#include "hubloc/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hubloc/rng.hpp"

namespace hubloc {

namespace {

void check_range(const Range& r, const char* name) {
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument(std::string("range ") + name + " must satisfy lo <= hi");
  }
}

}  // namespace

void GeneratorSpec::validate() const {
  if (n < 2) throw std::invalid_argument("generator needs n >= 2, got " + std::to_string(n));
  if (p < 1 || p > n) {
    throw std::invalid_argument("generator needs 1 <= p <= n, got p=" + std::to_string(p));
  }
  check_range(fixed_cost, "fixed_cost");
  check_range(handling_cost, "handling_cost");
  check_range(unit_transport_cost, "unit_transport_cost");
  check_range(max_transfer_time, "max_transfer_time");
  check_range(capacity, "capacity");
  check_range(distance, "distance");
  check_range(demand, "demand");
  if (!(aircraft_capacity > 0.0)) throw std::invalid_argument("aircraft_capacity must be positive");
  if (!(window_lower_factor <= window_upper_factor)) {
    throw std::invalid_argument("window factors must satisfy lower <= upper");
  }
}

ProblemInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  ProblemInstance inst = ProblemInstance::zeros(n, spec.p);
  Rng rng(spec.seed);

  inst.omega = spec.omega;
  inst.alpha_discount = spec.alpha;
  inst.beta_discount = spec.beta;
  inst.aircraft_capacity = spec.aircraft_capacity;
  inst.lto_p1 = spec.lto_p1;
  inst.lto_p2 = spec.lto_p2;
  inst.ccd_rate_p1 = spec.ccd_rate_p1;
  inst.ccd_rate_p2 = spec.ccd_rate_p2;

  for (auto& v : inst.fixed_cost) v = rng.uniform(spec.fixed_cost.lo, spec.fixed_cost.hi);
  for (auto& v : inst.handling_cost) v = rng.uniform(spec.handling_cost.lo, spec.handling_cost.hi);
  for (auto& v : inst.capacity) v = rng.uniform(spec.capacity.lo, spec.capacity.hi);

  auto off_diagonal = [n](auto&& fn) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) fn(i, j);
      }
    }
  };
  off_diagonal([&](std::size_t i, std::size_t j) {
    inst.unit_transport_cost(i, j) = rng.uniform(spec.unit_transport_cost.lo, spec.unit_transport_cost.hi);
  });
  off_diagonal([&](std::size_t i, std::size_t j) {
    inst.max_transfer_time(i, j) = rng.uniform(spec.max_transfer_time.lo, spec.max_transfer_time.hi);
  });
  for (std::size_t i = 0; i < n; ++i) inst.max_transfer_time(i, i) = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = rng.uniform(spec.distance.lo, spec.distance.hi);
      inst.distance(i, j) = d;
      inst.distance(j, i) = d;
    }
  }
  off_diagonal([&](std::size_t i, std::size_t j) {
    std::array<double, 4> q{};
    for (auto& v : q) v = rng.uniform(spec.demand.lo, spec.demand.hi);
    std::sort(q.begin(), q.end());
    inst.demand(i, j) = {q[0], q[1], q[2], q[3]};
  });

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double tau = std::ceil(inst.distance(i, j) / 10.0);
      inst.travel_time(i, j) = tau;
      if (i == j) {
        inst.window_upper(i, j) = 0.0;
        continue;
      }
      inst.window_lower(i, j) = std::floor(spec.window_lower_factor * tau);
      inst.window_upper(i, j) = std::ceil(spec.window_upper_factor * tau);
      inst.early_penalty(i, j) = spec.early_penalty;
      inst.late_penalty(i, j) = spec.late_penalty;
    }
  }
  return inst;
}

GeneratorSpec preset(std::size_t index) {
  static constexpr std::array<std::array<std::size_t, 2>, kPresetCount> kSizes{{
      {15, 6}, {30, 10}, {45, 15}, {60, 20}, {80, 35},
      {90, 40}, {100, 45}, {110, 50}, {120, 60}, {150, 75},
  }};
  if (index < 1 || index > kPresetCount) {
    throw std::invalid_argument("preset index must be in [1, " + std::to_string(kPresetCount) +
                                "], got " + std::to_string(index));
  }
  GeneratorSpec spec;
  spec.n = kSizes[index - 1][0];
  spec.p = kSizes[index - 1][1];
  spec.seed = 1000 + index;
  return spec;
}

}  // namespace hubloc
