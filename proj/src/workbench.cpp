#include "hubloc/workbench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hubloc/evaluation.hpp"

namespace hubloc {

Solver parse_solver(const std::string& name) {
  if (name == "exact") return Solver::Exact;
  if (name == "nsga2") return Solver::Nsga2;
  if (name == "mopso") return Solver::Mopso;
  if (name == "mowoa") return Solver::Mowoa;
  throw std::invalid_argument("unknown solver '" + name + "' (exact, nsga2, mopso, mowoa)");
}

std::string solver_name(Solver solver) {
  switch (solver) {
    case Solver::Exact:
      return "exact";
    case Solver::Nsga2:
      return "nsga2";
    case Solver::Mopso:
      return "mopso";
    case Solver::Mowoa:
      return "mowoa";
  }
  return "?";
}

void SolverOptions::set_seed(std::uint64_t seed) {
  nsga2.seed = seed;
  mopso.seed = seed;
  mowoa.seed = seed;
}

void SolverOptions::set_workers(std::size_t workers) {
  nsga2.workers = workers;
  mopso.workers = workers;
  mowoa.workers = workers;
}

SolveOutcome run_solver(const ProblemInstance& inst, Solver solver, const SolverOptions& options) {
  SolveOutcome out;
  const auto start = std::chrono::steady_clock::now();
  switch (solver) {
    case Solver::Exact: {
      EpsilonGrid grid;
      grid.segments_z2 = options.grid_z2;
      grid.segments_z3 = options.grid_z3;
      out.front = epsilon_constraint_front(inst, grid, options.alpha_prime, options.budget);
      break;
    }
    case Solver::Nsga2:
      out.front = run_nsga2(inst, options.nsga2, options.alpha_prime);
      break;
    case Solver::Mopso:
      out.front = run_mopso(inst, options.mopso, options.alpha_prime);
      break;
    case Solver::Mowoa:
      out.front = run_mowoa(inst, options.mowoa, options.alpha_prime);
      break;
  }
  out.cpt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.front.empty()) {
    throw NoFeasibleSolution(solver_name(solver) + " found no feasible solution");
  }
  return out;
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "alpha") return SweepParameter::Alpha;
  if (name == "beta") return SweepParameter::Beta;
  if (name == "phi") return SweepParameter::Phi;
  if (name == "alpha_prime") return SweepParameter::AlphaPrime;
  throw std::invalid_argument("unknown sweep parameter '" + name +
                              "' (alpha, beta, phi, alpha_prime)");
}

std::size_t min_z1_index(const ParetoFront& front) {
  if (front.empty()) throw std::invalid_argument("front is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < front.size(); ++i) {
    if (lex_less_rounded(front.solutions[i].objectives, front.solutions[best].objectives)) best = i;
  }
  return best;
}

std::vector<SweepRow> sweep(const ProblemInstance& inst, const EvaluatedSolution& solution,
                            SweepParameter parameter, const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    ProblemInstance copy = inst;
    EvaluatedSolution sol = solution;
    switch (parameter) {
      case SweepParameter::Alpha:
        copy.alpha_discount = v;
        break;
      case SweepParameter::Beta:
        copy.beta_discount = v;
        break;
      case SweepParameter::Phi:
        copy.aircraft_capacity = v;
        break;
      case SweepParameter::AlphaPrime:
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("alpha_prime must lie in [0,1]");
        sol.alpha_prime = v;
        break;
    }
    if (!validate_instance(copy).empty()) {
      throw std::invalid_argument("sweep value " + format_double(v) + " makes the instance invalid");
    }
    SweepRow row;
    row.value = v;
    row.objectives = evaluate_unchecked(copy, sol.design, sol.plan, sol.alpha_prime);
    row.feasible = check_feasibility(copy, sol, sol.alpha_prime).empty();
    rows.push_back(row);
  }
  return rows;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.header = {"value", "z1", "z2", "z3", "feasible"};
  for (const auto& r : rows) {
    t.rows.push_back({format_double(r.value), format_double(r.objectives.z1),
                      format_double(r.objectives.z2), format_double(r.objectives.z3),
                      r.feasible ? "1" : "0"});
  }
  return t;
}

CompareReport compare(const std::vector<NamedInstance>& instances,
                      const std::vector<Solver>& algorithms, const std::vector<std::uint64_t>& seeds,
                      const SolverOptions& options) {
  CompareReport report;
  for (const auto& named : instances) {
    std::vector<ParetoFront> fronts;
    const std::size_t first = report.cells.size();
    for (Solver alg : algorithms) {
      // The exact solver is deterministic; one run stands for every seed.
      const std::vector<std::uint64_t> run_seeds =
          alg == Solver::Exact ? std::vector<std::uint64_t>{seeds.empty() ? 0 : seeds.front()} : seeds;
      for (std::uint64_t seed : run_seeds) {
        CompareCell cell;
        cell.instance = named.name;
        cell.algorithm = alg;
        cell.seed = seed;
        SolverOptions opt = options;
        opt.set_seed(seed);
        try {
          SolveOutcome out = run_solver(named.instance, alg, opt);
          cell.metrics = compute_metrics(out.front, out.cpt);
          fronts.push_back(std::move(out.front));
        } catch (const std::exception& e) {
          cell.error = e.what();
          fronts.emplace_back();
        }
        report.cells.push_back(std::move(cell));
      }
    }
    ObjectiveVector ref{0.0, 0.0, 0.0};
    bool any = false;
    for (const auto& f : fronts) {
      for (const auto& s : f.solutions) {
        for (std::size_t m = 0; m < 3; ++m) {
          ref[m] = any ? std::max(ref[m], s.objectives[m]) : s.objectives[m];
        }
        any = true;
      }
    }
    for (std::size_t m = 0; m < 3; ++m) ref[m] = ref[m] > 0.0 ? 1.1 * ref[m] : 1.0;
    for (std::size_t c = first; c < report.cells.size(); ++c) {
      const auto& f = fronts[c - first];
      if (!f.empty()) report.cells[c].hypervolume = hypervolume_within(f.objectives(), ref);
    }
  }

  for (Solver alg : algorithms) {
    AlgorithmSummary sum;
    sum.algorithm = alg;
    for (const auto& cell : report.cells) {
      if (cell.algorithm != alg || !cell.metrics) continue;
      sum.npf += static_cast<double>(cell.metrics->npf);
      sum.msi += cell.metrics->msi;
      sum.sm += cell.metrics->sm;
      sum.cpt += cell.metrics->cpt;
      ++sum.runs;
    }
    if (sum.runs > 0) {
      const double k = static_cast<double>(sum.runs);
      sum.npf /= k;
      sum.msi /= k;
      sum.sm /= k;
      sum.cpt /= k;
    }
    report.summary.push_back(sum);
  }
  if (!report.summary.empty()) {
    try {
      report.ranking = topsis_rank(summary_matrix(report.summary));
    } catch (const std::invalid_argument&) {
      report.ranking = {};
    }
  }
  return report;
}

Table compare_cells_table(const CompareReport& report) {
  Table t;
  t.header = {"instance", "algorithm", "seed", "npf", "msi", "sm", "cpt", "hypervolume", "status"};
  for (const auto& c : report.cells) {
    if (c.metrics) {
      t.rows.push_back({c.instance, solver_name(c.algorithm), std::to_string(c.seed),
                        std::to_string(c.metrics->npf), format_double(c.metrics->msi),
                        format_double(c.metrics->sm), format_double(c.metrics->cpt),
                        format_double(c.hypervolume), "ok"});
    } else {
      t.rows.push_back({c.instance, solver_name(c.algorithm), std::to_string(c.seed), "", "", "",
                        "", "", "missing: " + c.error});
    }
  }
  return t;
}

DecisionMatrix summary_matrix(const std::vector<AlgorithmSummary>& summary) {
  DecisionMatrix mx = metrics_matrix({}, {});
  for (const auto& sum : summary) {
    mx.alternatives.push_back(solver_name(sum.algorithm));
    mx.values.push_back({sum.npf, sum.msi, sum.sm, sum.cpt});
  }
  return mx;
}

Table compare_ranking_table(const CompareReport& report) {
  Table t;
  t.header = {"algorithm", "runs", "npf", "msi", "sm", "cpt", "ci", "rank"};
  std::vector<std::size_t> rank(report.summary.size(), 0);
  for (std::size_t r = 0; r < report.ranking.ranking.size(); ++r) rank[report.ranking.ranking[r]] = r + 1;
  const bool ranked = report.ranking.closeness.size() == report.summary.size();
  for (std::size_t a = 0; a < report.summary.size(); ++a) {
    const auto& m = report.summary[a];
    t.rows.push_back({solver_name(m.algorithm), std::to_string(m.runs), format_double(m.npf),
                      format_double(m.msi), format_double(m.sm), format_double(m.cpt),
                      ranked ? format_double(report.ranking.closeness[a]) : "",
                      ranked ? std::to_string(rank[a]) : ""});
  }
  return t;
}

}  // namespace hubloc
