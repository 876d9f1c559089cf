#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hubloc/analysis.hpp"
#include "hubloc/exact.hpp"
#include "hubloc/io.hpp"
#include "hubloc/metaheuristics.hpp"

namespace hubloc {

enum class Solver { Exact, Nsga2, Mopso, Mowoa };

/// "exact", "nsga2", "mopso", "mowoa"; throws std::invalid_argument otherwise.
Solver parse_solver(const std::string& name);
std::string solver_name(Solver solver);

struct SolverOptions {
  double alpha_prime = 0.5;
  std::size_t grid_z2 = 6;
  std::size_t grid_z3 = 6;
  std::uint64_t budget = kDefaultConfigurationBudget;
  Nsga2Params nsga2;
  MopsoParams mopso;
  MowoaParams mowoa;

  /// Sets the seed of every metaheuristic.
  void set_seed(std::uint64_t seed);
  /// Sets the worker count of every metaheuristic.
  void set_workers(std::size_t workers);
};

struct SolveOutcome {
  ParetoFront front;
  double cpt = 0.0;  ///< solver wall-clock seconds
};

/// Runs one solver. Throws NoFeasibleSolution when nothing feasible is found
/// and BudgetExceeded from the exact solver.
SolveOutcome run_solver(const ProblemInstance& inst, Solver solver, const SolverOptions& options);

enum class SweepParameter { Alpha, Beta, Phi, AlphaPrime };

/// "alpha", "beta", "phi", "alpha_prime"; throws std::invalid_argument otherwise.
SweepParameter parse_sweep_parameter(const std::string& name);

/// Index of the minimum-z1 member (ties by z2, z3, then position).
std::size_t min_z1_index(const ParetoFront& front);

struct SweepRow {
  double value = 0.0;
  ObjectiveVector objectives;
  bool feasible = true;
};

/// Re-evaluates `solution` with its design and plan held fixed while one
/// parameter takes each value. The instance parameter or alpha_prime of the
/// solution is replaced; everything else is unchanged.
std::vector<SweepRow> sweep(const ProblemInstance& inst, const EvaluatedSolution& solution,
                            SweepParameter parameter, const std::vector<double>& values);
Table sweep_table(const std::vector<SweepRow>& rows);

struct NamedInstance {
  std::string name;
  ProblemInstance instance;
};

struct CompareCell {
  std::string instance;
  Solver algorithm = Solver::Nsga2;
  std::uint64_t seed = 0;
  std::optional<FrontMetrics> metrics;  ///< missing when the run failed
  double hypervolume = 0.0;             ///< against the instance's shared reference
  std::string error;
};

/// Per-algorithm means over the successful cells.
struct AlgorithmSummary {
  Solver algorithm = Solver::Nsga2;
  std::size_t runs = 0;
  double npf = 0.0;
  double msi = 0.0;
  double sm = 0.0;
  double cpt = 0.0;
};

struct CompareReport {
  std::vector<CompareCell> cells;
  std::vector<AlgorithmSummary> summary;
  TopsisResult ranking;  ///< over `summary`; empty if TOPSIS was undefined
};

/// Decision matrix of the summary means (NPF, MSI benefit; SM, CPT cost).
DecisionMatrix summary_matrix(const std::vector<AlgorithmSummary>& summary);

/// Runs every (instance, algorithm, seed) cell. The shared hypervolume
/// reference of an instance is 1.1 times the componentwise maximum over all
/// of its fronts (1 where that maximum is not positive). A failed cell is
/// recorded with its error and excluded from the averages.
CompareReport compare(const std::vector<NamedInstance>& instances,
                      const std::vector<Solver>& algorithms, const std::vector<std::uint64_t>& seeds,
                      const SolverOptions& options);

Table compare_cells_table(const CompareReport& report);
Table compare_ranking_table(const CompareReport& report);

}  // namespace hubloc
