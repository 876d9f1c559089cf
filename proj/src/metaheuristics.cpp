#include "hubloc/metaheuristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "hubloc/evaluation.hpp"
#include "hubloc/fuzzy.hpp"

namespace hubloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Stream index reserved for single-owner archive updates.
constexpr std::uint64_t kArchiveStream = 0xa5c1'0000'0000ULL;

double clamp_gene(double x) {
  if (!(x >= 0.0)) return 0.0;  // also catches NaN
  return std::min(x, kGeneMax);
}

Genome random_genome(std::size_t n, Rng& rng) {
  Genome g;
  g.genes.resize(Genome::length(n));
  for (double& x : g.genes) x = rng.uniform();
  return g;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<ObjectiveVector> evaluate_all(const std::vector<Genome>& genomes,
                                          const ProblemInstance& inst, double alpha_prime,
                                          std::size_t workers) {
  std::vector<ObjectiveVector> out(genomes.size());
  parallel_for(genomes.size(), workers,
               [&](std::size_t i) { out[i] = evaluate_genome(genomes[i], inst, alpha_prime); });
  return out;
}

ParetoFront decode_front(const ProblemInstance& inst, const std::vector<const Genome*>& genomes,
                         double alpha_prime) {
  std::vector<EvaluatedSolution> sols;
  for (const Genome* g : genomes) {
    auto dec = decode(*g, inst);
    if (!dec || !repair_capacity(inst, dec->design, dec->plan, alpha_prime)) continue;
    EvaluatedSolution s;
    s.objectives = evaluate_unchecked(inst, dec->design, dec->plan, alpha_prime);
    s.design = std::move(dec->design);
    s.plan = std::move(dec->plan);
    s.alpha_prime = alpha_prime;
    sols.push_back(std::move(s));
  }
  return make_front(std::move(sols));
}

void check_common(std::size_t iterations, std::size_t population, const char* who) {
  (void)iterations;
  if (population < 1) throw std::invalid_argument(std::string(who) + ": population must be >= 1");
}

}  // namespace

std::optional<Decoded> decode(const Genome& genome, const ProblemInstance& inst) {
  const std::size_t n = inst.n;
  if (genome.genes.size() != Genome::length(n)) {
    throw std::invalid_argument("genome length does not match instance");
  }
  const std::size_t p = std::min(inst.p, n);
  const double g0 = clamp_gene(genome.count_gene());
  const std::size_t h =
      std::min(p, 1 + static_cast<std::size_t>(std::floor(g0 * static_cast<double>(p))));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return genome.hub_key(a) > genome.hub_key(b);
  });

  Decoded out;
  out.design.hub_open.assign(n, 0);
  out.design.assignment.assign(n, kNoNode);
  for (std::size_t r = 0; r < h; ++r) {
    out.design.hub_open[order[r]] = 1;
    out.design.assignment[order[r]] = order[r];
  }
  // The assignment key picks a position in the distance-ranked list of open
  // hubs within omega; small keys give the nearest hub.
  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.design.hub_open[i]) continue;
    near.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (out.design.hub_open[k] && inst.distance(i, k) <= inst.omega + kFeasibilityTolerance) {
        near.push_back(k);
      }
    }
    if (near.empty()) return std::nullopt;
    std::stable_sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      return inst.distance(i, a) < inst.distance(i, b);
    });
    const double key = clamp_gene(genome.assign_key(n, i));
    const auto pos = static_cast<std::size_t>(key * static_cast<double>(near.size()));
    out.design.assignment[i] = near[std::min(pos, near.size() - 1)];
  }

  out.plan = RoutePlan(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto routes = feasible_routes(inst, out.design, i, j);
      if (routes.empty()) return std::nullopt;
      const bool want_direct = genome.route_key(n, i, j) < 0.5;
      const Route* direct = nullptr;
      const Route* hub = nullptr;
      for (const Route& r : routes) (r.uses_hub() ? hub : direct) = &r;
      const Route* pick = want_direct ? (direct ? direct : hub) : (hub ? hub : direct);
      out.plan.at(i, j) = *pick;
    }
  }
  return out;
}

bool repair_capacity(const ProblemInstance& inst, const NetworkDesign& design, RoutePlan& plan,
                     double alpha_prime) {
  const std::size_t n = inst.n;
  std::vector<double> load = hub_loads(inst, plan, alpha_prime);
  auto worst_hub = [&]() {
    std::size_t worst = kNoNode;
    double excess = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!design.hub_open[k]) continue;
      const double e = load[k] - inst.capacity[k];
      if (e > kFeasibilityTolerance && e > excess) {
        excess = e;
        worst = k;
      }
    }
    return worst;
  };
  struct Candidate {
    double q;
    std::size_t i;
    std::size_t j;
  };
  // Per hub: its reroutable pairs by demand, largest first, ties by pair index.
  std::vector<std::vector<Candidate>> by_hub;
  std::vector<std::size_t> next;
  auto build = [&]() {
    by_hub.assign(n, {});
    next.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Route& r = plan.at(i, j);
        if (!r.uses_hub()) continue;
        if (route_time(inst, Route::direct(), i, j) >
            inst.max_transfer_time(i, j) + kFeasibilityTolerance) {
          continue;
        }
        const Candidate c{defuzzify(inst.demand(i, j), alpha_prime), i, j};
        by_hub[r.first].push_back(c);
        if (r.kind == RouteKind::TwoHub && r.second != r.first) by_hub[r.second].push_back(c);
      }
    }
    for (auto& list : by_hub) {
      std::stable_sort(list.begin(), list.end(),
                       [](const Candidate& a, const Candidate& b) { return a.q > b.q; });
    }
  };
  bool built = false;
  for (;;) {
    std::size_t k = worst_hub();
    if (k == kNoNode) {
      // Confirm against a fresh summation before declaring success.
      load = hub_loads(inst, plan, alpha_prime);
      k = worst_hub();
      if (k == kNoNode) return true;
    }
    if (!built) {
      build();
      built = true;
    }
    // Rerouting only ever turns hub routes into Direct, so consumed entries
    // are recognised by their current route.
    auto& list = by_hub[k];
    std::size_t& pos = next[k];
    while (pos < list.size() && !plan.at(list[pos].i, list[pos].j).uses_hub()) ++pos;
    if (pos == list.size() || list[pos].q <= 0.0) return false;
    const Candidate c = list[pos++];
    const Route old = plan.at(c.i, c.j);
    load[old.first] -= c.q;
    if (old.kind == RouteKind::TwoHub) load[old.second] -= c.q;
    plan.at(c.i, c.j) = Route::direct();
  }
}

ObjectiveVector evaluate_genome(const Genome& genome, const ProblemInstance& inst,
                                double alpha_prime) {
  auto dec = decode(genome, inst);
  if (!dec || !repair_capacity(inst, dec->design, dec->plan, alpha_prime)) {
    return ObjectiveVector::infinite();
  }
  return evaluate_unchecked(inst, dec->design, dec->plan, alpha_prime);
}

std::vector<std::size_t> nondominated_sort(const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (dominates(points[a], points[b])) {
        dominated[a].push_back(b);
        ++count[b];
      } else if (dominates(points[b], points[a])) {
        dominated[b].push_back(a);
        ++count[a];
      }
    }
  }
  std::vector<std::size_t> rank(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) current.push_back(i);
  }
  for (std::size_t r = 0; !current.empty(); ++r) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = r;
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return rank;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < 3; ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    const double range = front[order.back()][m] - front[order.front()][m];
    if (!(range > 0.0) || !std::isfinite(range)) continue;
    for (std::size_t r = 1; r + 1 < n; ++r) {
      dist[order[r]] += (front[order[r + 1]][m] - front[order[r - 1]][m]) / range;
    }
  }
  return dist;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HUBLOC_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void Nsga2Params::validate(std::size_t n) const {
  if (population_size < 2) throw std::invalid_argument("nsga2: population must be >= 2");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw std::invalid_argument("nsga2: crossover probability must lie in [0,1]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw std::invalid_argument("nsga2: mutation probability must lie in [0,1]");
  }
  if (!(sbx_eta >= 0.0)) throw std::invalid_argument("nsga2: sbx eta must be >= 0");
  for (const Genome& g : initial) {
    if (g.genes.size() != Genome::length(n)) {
      throw std::invalid_argument("nsga2: initial genome length does not match instance");
    }
  }
}

void MopsoParams::validate() const {
  check_common(max_iterations, population_size, "mopso");
  if (!(inertia >= 0.0) || !(cognitive >= 0.0) || !(social >= 0.0)) {
    throw std::invalid_argument("mopso: w, c1 and c2 must be >= 0");
  }
  if (!(max_velocity > 0.0)) throw std::invalid_argument("mopso: max velocity must be > 0");
  if (archive_capacity < population_size) {
    throw std::invalid_argument("mopso: archive capacity must be >= population");
  }
  if (grid_divisions < 1) throw std::invalid_argument("mopso: grid divisions must be >= 1");
}

void MowoaParams::validate() const {
  check_common(max_iterations, population_size, "mowoa");
  if (!(a_max >= 0.0)) throw std::invalid_argument("mowoa: A must be >= 0");
  if (!(c_max >= 0.0)) throw std::invalid_argument("mowoa: C must be >= 0");
  if (!std::isfinite(spiral_constant)) throw std::invalid_argument("mowoa: spiral constant must be finite");
  if (!(spiral_probability >= 0.0 && spiral_probability <= 1.0)) {
    throw std::invalid_argument("mowoa: spiral probability must lie in [0,1]");
  }
  if (archive_capacity < 1) throw std::invalid_argument("mowoa: archive capacity must be >= 1");
  if (grid_divisions < 1) throw std::invalid_argument("mowoa: grid divisions must be >= 1");
}

// ---------------------------------------------------------------- NSGA-II

namespace {

struct Ranked {
  std::vector<std::size_t> rank;
  std::vector<double> crowd;
};

Ranked rank_population(const std::vector<ObjectiveVector>& objs) {
  Ranked out;
  out.rank = nondominated_sort(objs);
  out.crowd.assign(objs.size(), 0.0);
  const std::size_t levels =
      objs.empty() ? 0 : 1 + *std::max_element(out.rank.begin(), out.rank.end());
  for (std::size_t r = 0; r < levels; ++r) {
    std::vector<std::size_t> members;
    std::vector<ObjectiveVector> pts;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      if (out.rank[i] == r) {
        members.push_back(i);
        pts.push_back(objs[i]);
      }
    }
    const auto d = crowding_distance(pts);
    for (std::size_t k = 0; k < members.size(); ++k) out.crowd[members[k]] = d[k];
  }
  return out;
}

bool better(const Ranked& rk, std::size_t a, std::size_t b) {
  if (rk.rank[a] != rk.rank[b]) return rk.rank[a] < rk.rank[b];
  return rk.crowd[a] > rk.crowd[b];
}

void sbx(std::vector<double>& x, std::vector<double>& y, double eta, Rng& rng) {
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (!rng.chance(0.5)) continue;
    const double u = rng.uniform();
    if (std::fabs(x[g] - y[g]) < 1e-14) continue;
    const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double a = 0.5 * ((1.0 + beta) * x[g] + (1.0 - beta) * y[g]);
    const double b = 0.5 * ((1.0 - beta) * x[g] + (1.0 + beta) * y[g]);
    x[g] = clamp_gene(a);
    y[g] = clamp_gene(b);
  }
}

// Each gene resets with probability 1/L; one gene is forced if none fired.
void reset_mutation(std::vector<double>& x, Rng& rng) {
  const double rate = 1.0 / static_cast<double>(x.size());
  bool fired = false;
  for (double& v : x) {
    if (rng.chance(rate)) {
      v = rng.uniform();
      fired = true;
    }
  }
  if (!fired) x[rng.below(x.size())] = rng.uniform();
}

}  // namespace

ParetoFront run_nsga2(const ProblemInstance& inst, const Nsga2Params& params, double alpha_prime) {
  params.validate(inst.n);
  const std::size_t n = inst.n;
  const std::size_t np = params.population_size;
  const std::size_t workers = resolve_workers(params.workers);

  std::vector<Genome> pop(np);
  for (std::size_t i = 0; i < np; ++i) {
    if (i < params.initial.size()) {
      pop[i] = params.initial[i];
      for (double& x : pop[i].genes) x = clamp_gene(x);
    } else {
      Rng rng(stream_seed(params.seed, 0, i));
      pop[i] = random_genome(n, rng);
    }
  }
  std::vector<ObjectiveVector> objs = evaluate_all(pop, inst, alpha_prime, workers);
  Ranked rk = rank_population(objs);

  for (std::size_t gen = 1; gen <= params.max_iterations; ++gen) {
    std::vector<Genome> kids(np);
    for (std::size_t q = 0; 2 * q < np; ++q) {
      Rng rng(stream_seed(params.seed, gen, q));
      auto pick = [&] {
        const std::size_t a = rng.below(np);
        const std::size_t b = rng.below(np);
        return better(rk, b, a) ? b : a;
      };
      const std::size_t pa = pick();
      const std::size_t pb = pick();
      std::vector<double> x = pop[pa].genes;
      std::vector<double> y = pop[pb].genes;
      if (rng.chance(params.crossover_probability)) sbx(x, y, params.sbx_eta, rng);
      if (rng.chance(params.mutation_probability)) reset_mutation(x, rng);
      if (rng.chance(params.mutation_probability)) reset_mutation(y, rng);
      kids[2 * q].genes = std::move(x);
      if (2 * q + 1 < np) kids[2 * q + 1].genes = std::move(y);
    }
    std::vector<ObjectiveVector> kid_objs = evaluate_all(kids, inst, alpha_prime, workers);

    std::vector<Genome> merged = std::move(pop);
    merged.insert(merged.end(), std::make_move_iterator(kids.begin()),
                  std::make_move_iterator(kids.end()));
    std::vector<ObjectiveVector> merged_objs = std::move(objs);
    merged_objs.insert(merged_objs.end(), kid_objs.begin(), kid_objs.end());
    const Ranked mrk = rank_population(merged_objs);

    std::vector<std::size_t> order(merged.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(mrk, a, b); });
    order.resize(np);
    pop.clear();
    objs.clear();
    for (std::size_t idx : order) {
      pop.push_back(std::move(merged[idx]));
      objs.push_back(merged_objs[idx]);
    }
    // Crowding is recomputed on the survivors so tournaments see the
    // truncated population.
    rk = rank_population(objs);
  }

  std::vector<const Genome*> best;
  for (std::size_t i = 0; i < np; ++i) {
    if (rk.rank[i] == 0 && objs[i].is_finite()) best.push_back(&pop[i]);
  }
  return decode_front(inst, best, alpha_prime);
}

// ---------------------------------------------------------------- archive

GridArchive::GridArchive(std::size_t capacity, std::size_t divisions)
    : capacity_(capacity), divisions_(std::max<std::size_t>(1, divisions)) {}

bool GridArchive::insert(const Genome& genome, const ObjectiveVector& objectives, Rng& rng) {
  if (!objectives.is_finite()) return false;
  const ObjectiveVector r = rounded(objectives);
  for (const Entry& e : entries_) {
    const ObjectiveVector re = rounded(e.objectives);
    if (re == r || dominates(re, r)) return false;
  }
  std::erase_if(entries_, [&](const Entry& e) { return dominates(r, rounded(e.objectives)); });
  entries_.push_back({genome, objectives});
  rebuild_grid();
  while (entries_.size() > capacity_) {
    std::map<std::size_t, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < entries_.size(); ++i) cells[cell_[i]].push_back(i);
    const std::vector<std::size_t>* densest = nullptr;
    for (const auto& [cell, members] : cells) {
      if (!densest || members.size() > densest->size()) densest = &members;
    }
    const std::size_t victim = (*densest)[rng.below(densest->size())];
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    rebuild_grid();
  }
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.genome == genome && e.objectives == objectives; });
}

void GridArchive::rebuild_grid() {
  std::array<double, 3> lo{kInf, kInf, kInf};
  std::array<double, 3> hi{-kInf, -kInf, -kInf};
  for (const Entry& e : entries_) {
    for (std::size_t m = 0; m < 3; ++m) {
      lo[m] = std::min(lo[m], e.objectives[m]);
      hi[m] = std::max(hi[m], e.objectives[m]);
    }
  }
  cell_.assign(entries_.size(), 0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    std::size_t id = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      std::size_t c = 0;
      const double span = hi[m] - lo[m];
      if (span > 0.0) {
        const double t = (entries_[i].objectives[m] - lo[m]) / span;
        c = std::min(divisions_ - 1,
                     static_cast<std::size_t>(t * static_cast<double>(divisions_)));
      }
      id = id * divisions_ + c;
    }
    cell_[i] = id;
  }
}

const GridArchive::Entry& GridArchive::select_leader(Rng& rng) const {
  if (entries_.empty()) throw std::logic_error("select_leader on an empty archive");
  std::map<std::size_t, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < entries_.size(); ++i) cells[cell_[i]].push_back(i);
  double total = 0.0;
  for (const auto& [cell, members] : cells) total += 1.0 / static_cast<double>(members.size());
  double u = rng.uniform() * total;
  const std::vector<std::size_t>* chosen = &cells.rbegin()->second;
  for (const auto& [cell, members] : cells) {
    u -= 1.0 / static_cast<double>(members.size());
    if (u < 0.0) {
      chosen = &members;
      break;
    }
  }
  return entries_[(*chosen)[rng.below(chosen->size())]];
}

// ---------------------------------------------------------------- MOPSO

ParetoFront run_mopso(const ProblemInstance& inst, const MopsoParams& params, double alpha_prime) {
  params.validate();
  const std::size_t n = inst.n;
  const std::size_t np = params.population_size;
  const std::size_t workers = resolve_workers(params.workers);

  std::vector<Genome> pos(np);
  for (std::size_t i = 0; i < np; ++i) {
    Rng rng(stream_seed(params.seed, 0, i));
    pos[i] = random_genome(n, rng);
  }
  std::vector<std::vector<double>> vel(np, std::vector<double>(Genome::length(n), 0.0));
  std::vector<ObjectiveVector> objs = evaluate_all(pos, inst, alpha_prime, workers);
  std::vector<Genome> pbest = pos;
  std::vector<ObjectiveVector> pbest_obj = objs;

  GridArchive archive(params.archive_capacity, params.grid_divisions);
  {
    Rng arng(stream_seed(params.seed, 0, kArchiveStream));
    for (std::size_t i = 0; i < np; ++i) archive.insert(pos[i], objs[i], arng);
  }

  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    std::vector<Rng> rngs;
    rngs.reserve(np);
    for (std::size_t i = 0; i < np; ++i) rngs.emplace_back(stream_seed(params.seed, it, i));
    for (std::size_t i = 0; i < np; ++i) {
      Rng& rng = rngs[i];
      const Genome& leader = archive.empty() ? pbest[i] : archive.select_leader(rng).genome;
      auto& x = pos[i].genes;
      auto& v = vel[i];
      for (std::size_t g = 0; g < x.size(); ++g) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double nv = params.inertia * v[g] + params.cognitive * r1 * (pbest[i].genes[g] - x[g]) +
                    params.social * r2 * (leader.genes[g] - x[g]);
        nv = std::clamp(nv, -params.max_velocity, params.max_velocity);
        double nx = x[g] + nv;
        if (nx < 0.0) {
          nx = 0.0;
          nv = -nv;
        } else if (nx > kGeneMax) {
          nx = kGeneMax;
          nv = -nv;
        }
        x[g] = nx;
        v[g] = nv;
      }
    }
    objs = evaluate_all(pos, inst, alpha_prime, workers);
    for (std::size_t i = 0; i < np; ++i) {
      const bool take = dominates(objs[i], pbest_obj[i]) ||
                        (!dominates(pbest_obj[i], objs[i]) && rngs[i].chance(0.5));
      if (take) {
        pbest[i] = pos[i];
        pbest_obj[i] = objs[i];
      }
    }
    Rng arng(stream_seed(params.seed, it, kArchiveStream));
    for (std::size_t i = 0; i < np; ++i) archive.insert(pos[i], objs[i], arng);
  }

  std::vector<const Genome*> members;
  for (const auto& e : archive.entries()) members.push_back(&e.genome);
  return decode_front(inst, members, alpha_prime);
}

// ---------------------------------------------------------------- MOWOA

ParetoFront run_mowoa(const ProblemInstance& inst, const MowoaParams& params, double alpha_prime) {
  params.validate();
  const std::size_t n = inst.n;
  const std::size_t np = params.population_size;
  const std::size_t workers = resolve_workers(params.workers);

  std::vector<Genome> pos(np);
  for (std::size_t i = 0; i < np; ++i) {
    Rng rng(stream_seed(params.seed, 0, i));
    pos[i] = random_genome(n, rng);
  }
  std::vector<ObjectiveVector> objs = evaluate_all(pos, inst, alpha_prime, workers);
  GridArchive archive(params.archive_capacity, params.grid_divisions);
  {
    Rng arng(stream_seed(params.seed, 0, kArchiveStream));
    for (std::size_t i = 0; i < np; ++i) archive.insert(pos[i], objs[i], arng);
  }

  const double span = params.max_iterations > 1 ? static_cast<double>(params.max_iterations - 1) : 1.0;
  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    const double a = params.a_max * (1.0 - static_cast<double>(it - 1) / span);
    const std::vector<Genome> prev = pos;
    // A, C and l are vectors with one draw per gene; each component of a
    // non-spiral move encircles the leader when |A_g| < 1 and otherwise
    // explores around a randomly drawn agent.
    for (std::size_t i = 0; i < np; ++i) {
      Rng rng(stream_seed(params.seed, it, i));
      const bool spiral = rng.chance(params.spiral_probability);
      const Genome& leader = archive.empty() ? prev[rng.below(np)] : archive.select_leader(rng).genome;
      auto& x = pos[i].genes;
      const auto& cur = prev[i].genes;
      for (std::size_t g = 0; g < x.size(); ++g) {
        if (spiral) {
          const double l = rng.uniform(-1.0, 1.0);
          const double factor = std::exp(params.spiral_constant * l) * std::cos(2.0 * kPi * l);
          x[g] = clamp_gene(std::fabs(leader.genes[g] - cur[g]) * factor + leader.genes[g]);
        } else {
          const double A = 2.0 * a * rng.uniform() - a;
          const double C = params.c_max * rng.uniform();
          const double target = std::fabs(A) < 1.0 ? leader.genes[g] : prev[rng.below(np)].genes[g];
          x[g] = clamp_gene(target - A * std::fabs(C * target - cur[g]));
        }
      }
    }
    objs = evaluate_all(pos, inst, alpha_prime, workers);
    Rng arng(stream_seed(params.seed, it, kArchiveStream));
    for (std::size_t i = 0; i < np; ++i) archive.insert(pos[i], objs[i], arng);
  }

  std::vector<const Genome*> members;
  for (const auto& e : archive.entries()) members.push_back(&e.genome);
  return decode_front(inst, members, alpha_prime);
}

}  // namespace hubloc
