#pragma once

#include <cstddef>
#include <cstdint>

#include "hubloc/model.hpp"

namespace hubloc {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Generator parameters; every quantity is drawn uniformly from its range.
struct GeneratorSpec {
  std::size_t n = 10;
  std::size_t p = 3;
  std::uint64_t seed = 1;

  double omega = 250.0;
  double alpha = 0.6;
  double beta = 0.8;
  double early_penalty = 1.2;
  double late_penalty = 1.3;
  double aircraft_capacity = 50.0;
  double lto_p1 = 1.0;
  double lto_p2 = 3.0;
  double ccd_rate_p1 = 2.0;
  double ccd_rate_p2 = 0.5;

  Range fixed_cost{200.0, 500.0};
  Range handling_cost{0.1, 0.2};
  Range unit_transport_cost{2.0, 3.0};
  Range max_transfer_time{200.0, 300.0};
  Range capacity{2000.0, 3000.0};
  Range distance{50.0, 300.0};
  Range demand{60.0, 70.0};

  /// Soft window around the direct travel time tau: [floor(lo*tau), ceil(hi*tau)].
  double window_lower_factor = 0.8;
  double window_upper_factor = 1.2;

  /// Throws std::invalid_argument on n < 2, p outside [1, n] or inverted ranges.
  void validate() const;
};

/// Draw order, one mt19937_64 stream seeded with `seed`:
///   fixed_cost[k], handling_cost[k], capacity[k]       (k ascending, one block each)
///   unit_transport_cost(i,j), max_transfer_time(i,j)   (row-major, i != j, one block each)
///   distance(i,j) for i < j                            (row-major upper triangle)
///   demand(i,j): four draws, sorted                    (row-major, i != j)
/// travel_time = ceil(distance / 10); windows derive from travel_time.
ProblemInstance generate(const GeneratorSpec& spec);

inline constexpr std::size_t kPresetCount = 10;

/// Larger-size benchmark sizes 1..10 with a fixed seed per index.
GeneratorSpec preset(std::size_t index);

}  // namespace hubloc
