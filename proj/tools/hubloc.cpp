#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hubloc/generator.hpp"
#include "hubloc/workbench.hpp"

using namespace hubloc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kIo = 3 };

struct SolverFlags {
  std::string solver = "exact";
  double alpha_prime = 0.5;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  std::size_t grid_z2 = 6;
  std::size_t grid_z3 = 6;
  std::uint64_t budget = kDefaultConfigurationBudget;
  std::size_t max_it = 125;
  std::size_t pop = 100;
  double pc = 0.05;
  double pm = 0.9;
  double c1 = 1.0;
  double c2 = 1.0;
  double w = 0.9;
  double a = 2.0;
  double c = 3.0;
  std::size_t archive = 0;  // 0: equal to the population size

  [[nodiscard]] SolverOptions options() const {
    SolverOptions o;
    o.alpha_prime = alpha_prime;
    o.grid_z2 = grid_z2;
    o.grid_z3 = grid_z3;
    o.budget = budget;
    o.set_seed(seed);
    o.set_workers(workers);
    o.nsga2.max_iterations = o.mopso.max_iterations = o.mowoa.max_iterations = max_it;
    o.nsga2.population_size = o.mopso.population_size = o.mowoa.population_size = pop;
    o.nsga2.crossover_probability = pc;
    o.nsga2.mutation_probability = pm;
    o.mopso.cognitive = c1;
    o.mopso.social = c2;
    o.mopso.inertia = w;
    o.mowoa.a_max = a;
    o.mowoa.c_max = c;
    o.mopso.archive_capacity = o.mowoa.archive_capacity = archive > 0 ? archive : pop;
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f, bool with_solver) {
  if (with_solver) {
    cmd->add_option("--solver", f.solver, "exact, nsga2, mopso or mowoa")
        ->check(CLI::IsMember({"exact", "nsga2", "mopso", "mowoa"}))
        ->capture_default_str();
  }
  cmd->add_option("--alpha-prime", f.alpha_prime, "Uncertainty rate in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Master seed of the metaheuristics")->capture_default_str();
  cmd->add_option("--workers", f.workers, "Evaluation threads (0: HUBLOC_WORKERS or all cores)")
      ->capture_default_str();
  cmd->add_option("--grid-z2", f.grid_z2, "Epsilon segments for z2")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--grid-z3", f.grid_z3, "Epsilon segments for z3")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--budget", f.budget, "Exact solver configuration budget")->capture_default_str();
  cmd->add_option("--max-it", f.max_it, "Iterations")->capture_default_str();
  cmd->add_option("--pop", f.pop, "Population / swarm size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--pc", f.pc, "NSGA-II crossover probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--pm", f.pm, "NSGA-II mutation probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--c1", f.c1, "MOPSO cognitive coefficient")->capture_default_str();
  cmd->add_option("--c2", f.c2, "MOPSO social coefficient")->capture_default_str();
  cmd->add_option("--w", f.w, "MOPSO inertia")->capture_default_str();
  cmd->add_option("--A", f.a, "MOWOA initial a")->capture_default_str();
  cmd->add_option("--C", f.c, "MOWOA C range")->capture_default_str();
  cmd->add_option("--archive", f.archive, "MOPSO/MOWOA archive capacity (0: population size)")
      ->capture_default_str();
}

ProblemInstance load_valid_instance(const std::string& path) {
  ProblemInstance inst = read_instance(path);
  const auto report = validate_instance(inst);
  if (!report.empty()) {
    std::string msg = "instance '" + path + "' is invalid:";
    for (const auto& v : report) msg += "\n  " + v.code + ": " + v.detail;
    throw FormatError(msg);
  }
  return inst;
}

std::filesystem::path metrics_path_for(const std::filesystem::path& front) {
  std::filesystem::path p = front;
  p.replace_extension();
  return p.string() + ".metrics.csv";
}

void print_metrics(const std::string& solver, const FrontMetrics& m) {
  std::printf("%s: npf=%zu msi=%.6g sm=%.6g cpt=%.3fs\n", solver.c_str(), m.npf, m.msi, m.sm, m.cpt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-objective capacitated hub location workbench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults; flags take precedence");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random instance");
  std::size_t nodes = 10;
  std::size_t hubs = 3;
  std::uint64_t gen_seed = 1;
  std::size_t preset_index = 0;
  std::string gen_out;
  double omega = GeneratorSpec{}.omega;
  double alpha = GeneratorSpec{}.alpha;
  double beta = GeneratorSpec{}.beta;
  double phi = GeneratorSpec{}.aircraft_capacity;
  gen->add_option("--nodes", nodes, "Number of nodes")->capture_default_str();
  gen->add_option("--hubs", hubs, "Maximum number of hubs")->capture_default_str();
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Instance seed")->capture_default_str();
  auto* preset_opt = gen->add_option("--preset", preset_index, "Benchmark size 1..10")
                         ->check(CLI::Range(std::size_t{1}, kPresetCount));
  gen->add_option("--omega", omega, "Maximum spoke-hub distance")->capture_default_str();
  gen->add_option("--alpha", alpha, "Inter-hub cost discount")->capture_default_str();
  gen->add_option("--beta", beta, "Inter-hub emission discount")->capture_default_str();
  gen->add_option("--phi", phi, "Aircraft capacity")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Instance JSON path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Compute a Pareto front");
  SolverFlags solve_flags;
  std::string solve_in;
  std::string solve_out;
  std::string solve_metrics;
  solve->add_option("-i,--instance", solve_in, "Instance JSON")->required();
  solve->add_option("-o,--output", solve_out, "Front CSV path")->required();
  solve->add_option("--metrics", solve_metrics, "Metrics CSV path (default: <output>.metrics.csv)");
  add_solver_flags(solve, solve_flags, true);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Re-evaluate one front member under parameter changes");
  SolverFlags sweep_flags;
  std::string sweep_in;
  std::string sweep_front;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::size_t sweep_solution = 0;
  std::string sweep_out;
  sw->add_option("-i,--instance", sweep_in, "Instance JSON")->required();
  sw->add_option("--parameter", sweep_param, "alpha, beta, phi or alpha_prime")
      ->required()
      ->check(CLI::IsMember({"alpha", "beta", "phi", "alpha_prime"}));
  sw->add_option("--values", sweep_values, "Comma-separated values")->required()->delimiter(',');
  sw->add_option("--front", sweep_front, "Front CSV to take the solution from (default: solve)");
  sw->add_option("--solution", sweep_solution, "1-based front row (default: minimum z1)");
  sw->add_option("-o,--output", sweep_out, "Table CSV path")->required();
  add_solver_flags(sw, sweep_flags, true);

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare algorithms and rank them with TOPSIS");
  SolverFlags cmp_flags;
  std::vector<std::string> cmp_instances;
  std::vector<std::string> cmp_algorithms{"nsga2", "mopso", "mowoa"};
  std::vector<std::uint64_t> cmp_seeds{1};
  std::string cmp_out;
  cmp->add_option("--instances", cmp_instances, "Instance JSON files")->required()->delimiter(',');
  cmp->add_option("--algorithms", cmp_algorithms, "Algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "nsga2", "mopso", "mowoa"}))
      ->capture_default_str();
  cmp->add_option("--seeds", cmp_seeds, "Seeds")->delimiter(',')->capture_default_str();
  cmp->add_option("-o,--output", cmp_out, "Output prefix: <prefix>_cells.csv, <prefix>_ranking.csv")
      ->required();
  add_solver_flags(cmp, cmp_flags, false);

  // validate
  auto* val = app.add_subcommand("validate", "Check an instance and optionally a front");
  std::string val_in;
  std::string val_front;
  val->add_option("-i,--instance", val_in, "Instance JSON")->required();
  val->add_option("--front", val_front, "Front CSV whose rows are checked for feasibility");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return kIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) {
      GeneratorSpec spec;
      if (*preset_opt) {
        spec = preset(preset_index);
        if (*gen_seed_opt) spec.seed = gen_seed;
      } else {
        spec.n = nodes;
        spec.p = hubs;
        spec.seed = gen_seed;
      }
      spec.omega = omega;
      spec.alpha = alpha;
      spec.beta = beta;
      spec.aircraft_capacity = phi;
      const ProblemInstance inst = generate(spec);
      write_instance(gen_out, inst);
      std::printf("wrote %s (n=%zu, p=%zu, seed=%llu)\n", gen_out.c_str(), inst.n, inst.p,
                  static_cast<unsigned long long>(spec.seed));
      return kOk;
    }

    if (*solve) {
      const ProblemInstance inst = load_valid_instance(solve_in);
      const Solver solver = parse_solver(solve_flags.solver);
      const SolveOutcome out = run_solver(inst, solver, solve_flags.options());
      const FrontMetrics m = compute_metrics(out.front, out.cpt);
      write_front(solve_out, out.front);
      write_metrics(solve_metrics.empty() ? metrics_path_for(solve_out) : std::filesystem::path(solve_metrics), m);
      print_metrics(solve_flags.solver, m);
      return kOk;
    }

    if (*sw) {
      const ProblemInstance inst = load_valid_instance(sweep_in);
      ParetoFront front;
      if (!sweep_front.empty()) {
        front = read_front(sweep_front);
        if (front.empty()) throw FormatError("front '" + sweep_front + "' has no rows");
      } else {
        front = run_solver(inst, parse_solver(sweep_flags.solver), sweep_flags.options()).front;
      }
      std::size_t index = min_z1_index(front);
      if (sweep_solution > 0) {
        if (sweep_solution > front.size()) throw std::invalid_argument("--solution exceeds the front size");
        index = sweep_solution - 1;
      }
      const auto rows = sweep(inst, front.solutions[index], parse_sweep_parameter(sweep_param), sweep_values);
      write_table(sweep_out, sweep_table(rows));
      for (const auto& r : rows) {
        std::printf("%s=%g z1=%.6f z2=%.6f z3=%.6f%s\n", sweep_param.c_str(), r.value, r.objectives.z1,
                    r.objectives.z2, r.objectives.z3, r.feasible ? "" : " (infeasible)");
      }
      return kOk;
    }

    if (*cmp) {
      std::vector<NamedInstance> instances;
      for (const auto& path : cmp_instances) {
        instances.push_back({std::filesystem::path(path).stem().string(), load_valid_instance(path)});
      }
      std::vector<Solver> algorithms;
      for (const auto& a : cmp_algorithms) algorithms.push_back(parse_solver(a));
      const CompareReport report = compare(instances, algorithms, cmp_seeds, cmp_flags.options());
      write_table(cmp_out + "_cells.csv", compare_cells_table(report));
      write_table(cmp_out + "_ranking.csv", compare_ranking_table(report));
      for (const auto& c : report.cells) {
        if (!c.error.empty()) {
          std::fprintf(stderr, "%s/%s/seed %llu: %s\n", c.instance.c_str(), solver_name(c.algorithm).c_str(),
                       static_cast<unsigned long long>(c.seed), c.error.c_str());
        }
      }
      for (std::size_t r = 0; r < report.ranking.ranking.size(); ++r) {
        const std::size_t a = report.ranking.ranking[r];
        std::printf("%zu. %s CI=%.4f\n", r + 1, solver_name(report.summary[a].algorithm).c_str(),
                    report.ranking.closeness[a]);
      }
      return kOk;
    }

    if (*val) {
      const ProblemInstance inst = read_instance(val_in);
      const auto report = validate_instance(inst);
      for (const auto& v : report) std::printf("instance: %s: %s\n", v.code.c_str(), v.detail.c_str());
      std::size_t bad = report.size();
      if (report.empty() && !val_front.empty()) {
        const ParetoFront front = read_front(val_front);
        for (std::size_t s = 0; s < front.size(); ++s) {
          const auto& sol = front.solutions[s];
          for (const auto& v : check_feasibility(inst, sol, sol.alpha_prime)) {
            std::printf("solution %zu: %s: %s\n", s + 1, v.code.c_str(), v.detail.c_str());
            ++bad;
          }
        }
      }
      if (bad == 0) std::printf("ok\n");
      return bad == 0 ? kOk : kInfeasible;
    }
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s; the exact solver is limited to small instances, try --solver nsga2\n",
                 e.what());
    return kInfeasible;
  } catch (const NoFeasibleSolution& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInfeasible;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  }
  return kUsage;
}
