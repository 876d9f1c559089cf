#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hubloc/model.hpp"
#include "hubloc/pareto.hpp"
#include "hubloc/rng.hpp"

namespace hubloc {

/// Random-key genome over [0,1): count gene, n hub keys, n assignment keys,
/// then n*n route keys (row-major).
struct Genome {
  std::vector<double> genes;

  static std::size_t length(std::size_t n) { return 1 + 2 * n + n * n; }
  static Genome uniform(std::size_t n, double value) { return {std::vector<double>(length(n), value)}; }

  [[nodiscard]] double count_gene() const { return genes[0]; }
  [[nodiscard]] double hub_key(std::size_t k) const { return genes[1 + k]; }
  [[nodiscard]] double assign_key(std::size_t n, std::size_t i) const { return genes[1 + n + i]; }
  [[nodiscard]] double route_key(std::size_t n, std::size_t i, std::size_t j) const {
    return genes[1 + 2 * n + i * n + j];
  }

  bool operator==(const Genome&) const = default;
};

/// Largest double below 1; genes are clamped into [0, kGeneMax].
inline constexpr double kGeneMax = 1.0 - 0x1.0p-53;

struct Decoded {
  NetworkDesign design;
  RoutePlan plan;
};

/// Deterministic genome-to-solution mapping: the top hub keys open, each
/// spoke takes the floor(key * count)-th nearest open hub within omega, and
/// route keys below 0.5 prefer Direct. nullopt when some spoke has no
/// open hub within omega or some pair has no time-feasible route.
std::optional<Decoded> decode(const Genome& genome, const ProblemInstance& inst);

/// Reroutes the largest-demand hub-routed pair on the most-violated hub to
/// Direct until every hub is within capacity. Returns false if a violated hub
/// has no pair whose Direct route is time-feasible.
bool repair_capacity(const ProblemInstance& inst, const NetworkDesign& design, RoutePlan& plan,
                     double alpha_prime);

/// decode + repair + evaluate; infinite objectives when either step fails.
ObjectiveVector evaluate_genome(const Genome& genome, const ProblemInstance& inst,
                                double alpha_prime);

/// Rank per member: 0 for the nondominated set, r for the set that becomes
/// nondominated once ranks < r are removed. Exact (unrounded) comparisons.
std::vector<std::size_t> nondominated_sort(const std::vector<ObjectiveVector>& points);

/// Crowding distance of the members of one front.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

struct Nsga2Params {
  std::size_t max_iterations = 125;
  std::size_t population_size = 100;
  double crossover_probability = 0.05;
  double mutation_probability = 0.9;
  double sbx_eta = 15.0;
  std::uint64_t seed = 1;
  std::size_t workers = 0;           ///< 0: HUBLOC_WORKERS, else hardware threads
  std::vector<Genome> initial;       ///< optional seeds for the first population

  void validate(std::size_t n) const;
};

struct MopsoParams {
  std::size_t max_iterations = 125;
  std::size_t population_size = 100;
  double inertia = 0.9;
  double cognitive = 1.0;
  double social = 1.0;
  double max_velocity = 0.2;
  std::size_t archive_capacity = 100;
  std::size_t grid_divisions = 7;
  std::uint64_t seed = 1;
  std::size_t workers = 0;

  void validate() const;
};

struct MowoaParams {
  std::size_t max_iterations = 125;
  std::size_t population_size = 100;
  double a_max = 2.0;              ///< initial value of the linearly decaying a
  double c_max = 3.0;              ///< C drawn uniformly from [0, c_max)
  double spiral_constant = 1.0;
  double spiral_probability = 0.5;
  std::size_t archive_capacity = 100;
  std::size_t grid_divisions = 7;
  std::uint64_t seed = 1;
  std::size_t workers = 0;

  void validate() const;
};

/// Worker count: `requested` if nonzero, else HUBLOC_WORKERS, else the
/// hardware thread count (at least 1).
std::size_t resolve_workers(std::size_t requested);

ParetoFront run_nsga2(const ProblemInstance& inst, const Nsga2Params& params, double alpha_prime);
ParetoFront run_mopso(const ProblemInstance& inst, const MopsoParams& params, double alpha_prime);
ParetoFront run_mowoa(const ProblemInstance& inst, const MowoaParams& params, double alpha_prime);

/// External nondominated archive with an adaptive hypercube grid, shared by
/// MOPSO and MOWOA.
class GridArchive {
 public:
  struct Entry {
    Genome genome;
    ObjectiveVector objectives;
  };

  GridArchive(std::size_t capacity, std::size_t divisions);

  /// Inserts unless infinite, dominated by or equal (rounded) to a member;
  /// drops members the newcomer dominates and evicts from the densest cell
  /// when over capacity. Returns whether the newcomer was kept.
  bool insert(const Genome& genome, const ObjectiveVector& objectives, Rng& rng);

  /// Roulette over occupied cells with weight 1/occupancy, then a uniform
  /// member. Requires a nonempty archive.
  [[nodiscard]] const Entry& select_leader(Rng& rng) const;

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

 private:
  void rebuild_grid();

  std::size_t capacity_;
  std::size_t divisions_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> cell_;  ///< grid cell per entry
};

}  // namespace hubloc
