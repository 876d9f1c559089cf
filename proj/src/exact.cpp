#include "hubloc/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hubloc/evaluation.hpp"

namespace hubloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfStep = 0.5 * kObjectiveResolution;

using Objectives = std::array<double, 3>;
using Order = std::array<std::size_t, 3>;

Objectives as_array(const ObjectiveVector& v) { return {v.z1, v.z2, v.z3}; }

/// -1 if a is lexicographically better than b under `order`, +1 if worse,
/// 0 on a tie at objective resolution.
int lex_compare(const Objectives& a, const Objectives& b, const Order& order) {
  for (std::size_t r : order) {
    const double ra = round_objective(a[r]);
    const double rb = round_objective(b[r]);
    if (ra < rb - kHalfStep) return -1;
    if (ra > rb + kHalfStep) return 1;
  }
  return 0;
}

bool meets(const Objectives& z, const Objectives& eps) {
  for (std::size_t r = 0; r < 3; ++r) {
    if (std::isfinite(eps[r]) && round_objective(z[r]) > eps[r] + kObjectiveResolution) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hub-set and assignment enumeration

template <typename Fn>
void for_each_hub_set(std::size_t n, std::size_t p, Fn&& fn) {
  for (std::size_t h = 1; h <= std::min(p, n); ++h) {
    std::vector<std::size_t> comb(h);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      fn(comb);
      std::size_t pos = h;
      while (pos > 0 && comb[pos - 1] == n - h + pos - 1) --pos;
      if (pos == 0) break;
      ++comb[pos - 1];
      for (std::size_t q = pos; q < h; ++q) comb[q] = comb[q - 1] + 1;
    }
  }
}

/// Slots (indices into `hubs`) each node may be allocated to; a hub's only
/// slot is itself. Returns false if some spoke has no hub within omega.
bool allocation_candidates(const ProblemInstance& inst, const std::vector<std::size_t>& hubs,
                           std::vector<std::vector<std::uint8_t>>& cand) {
  cand.assign(inst.n, {});
  for (std::size_t a = 0; a < hubs.size(); ++a) cand[hubs[a]] = {static_cast<std::uint8_t>(a)};
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (!cand[i].empty()) continue;
    for (std::size_t a = 0; a < hubs.size(); ++a) {
      if (inst.distance(i, hubs[a]) <= inst.omega + kFeasibilityTolerance) {
        cand[i].push_back(static_cast<std::uint8_t>(a));
      }
    }
    if (cand[i].empty()) return false;
  }
  return true;
}

/// Mixed-radix walk over allocations; the lowest-index node varies slowest.
template <typename Fn>
void for_each_allocation(const std::vector<std::vector<std::uint8_t>>& cand, Fn&& fn) {
  const std::size_t n = cand.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<std::uint8_t> slots(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) slots[i] = cand[i][digit[i]];
    fn(slots);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < cand[pos].size()) break;
      digit[pos] = 0;
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

// ---------------------------------------------------------------------------
// Routing options per pair

struct Option {
  Route route;
  Objectives obj{};
  double load = 0.0;
  int slot1 = -1;
  int slot2 = -1;
};

struct PairItem {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t key = 0;  // i * n + j
  double demand = 0.0;
  std::array<Option, 2> opt;
  int count = 0;
};

Option make_option(const ProblemInstance& inst, const Route& route, std::size_t i, std::size_t j,
                   double q, int slot1, int slot2) {
  Option o;
  o.route = route;
  o.obj = as_array(pair_objectives(inst, route, i, j, q));
  o.load = route.uses_hub() ? q : 0.0;
  o.slot1 = slot1;
  o.slot2 = slot2;
  return o;
}

bool time_ok(const ProblemInstance& inst, const Route& r, std::size_t i, std::size_t j) {
  return route_time(inst, r, i, j) <= inst.max_transfer_time(i, j) + kFeasibilityTolerance;
}

/// Precomputed hub-route options for every pair and every slot combination of
/// one hub set.
struct HubSetTable {
  std::vector<std::size_t> hubs;
  double fixed = 0.0;
  std::vector<Option> options;  // [pair][a][b]
  std::vector<char> ok;

  [[nodiscard]] std::size_t index(std::size_t pair, std::size_t a, std::size_t b) const {
    const std::size_t h = hubs.size();
    return (pair * h + a) * h + b;
  }
};

struct PairBasics {
  std::size_t i = 0;
  std::size_t j = 0;
  double demand = 0.0;
  Option direct;
  bool direct_ok = false;
};

std::vector<PairBasics> pair_basics(const ProblemInstance& inst, double alpha_prime) {
  std::vector<PairBasics> out;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      PairBasics b;
      b.i = i;
      b.j = j;
      b.demand = defuzzify(inst.demand(i, j), alpha_prime);
      b.direct = make_option(inst, Route::direct(), i, j, b.demand, -1, -1);
      b.direct_ok = time_ok(inst, Route::direct(), i, j);
      out.push_back(b);
    }
  }
  return out;
}

HubSetTable build_hub_table(const ProblemInstance& inst, const std::vector<PairBasics>& pairs,
                            const std::vector<std::size_t>& hubs) {
  HubSetTable t;
  t.hubs = hubs;
  for (std::size_t k : hubs) t.fixed += inst.fixed_cost[k];
  const std::size_t h = hubs.size();
  t.options.resize(pairs.size() * h * h);
  t.ok.resize(pairs.size() * h * h, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const PairBasics& pb = pairs[p];
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = 0; b < h; ++b) {
        const Route r = a == b ? Route::one_hub(hubs[a]) : Route::two_hub(hubs[a], hubs[b]);
        const std::size_t idx = t.index(p, a, b);
        t.options[idx] = make_option(inst, r, pb.i, pb.j, pb.demand, static_cast<int>(a),
                                     a == b ? -1 : static_cast<int>(b));
        t.ok[idx] = time_ok(inst, r, pb.i, pb.j) ? 1 : 0;
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Branch and bound over routing choices of one design

struct Constraint {
  std::size_t resource;
  double cap;
};

struct Incumbent {
  bool has = false;
  Objectives obj{};
  EvaluatedSolution solution;
};

struct CellSpec {
  Order order{0, 1, 2};
  Objectives eps{kInf, kInf, kInf};
};

class RoutingSearch {
 public:
  using LeafHandler = std::function<void(const std::vector<int>&)>;

  /// Lagrangian relaxation of `cs` for objective `s` with multipliers fixed
  /// at the root: at depth d the bound is
  ///   S[s] + sum_c lambda_c (S[c] - cap_c) + sum_{pos >= d} min_o w_o(pos).
  struct Relaxation {
    bool infeasible = false;
    std::size_t objective = 0;
    std::vector<Constraint> cs;
    std::vector<double> lambda;
    std::vector<double> suffix;
  };


  RoutingSearch(std::vector<PairItem> items, double fixed, const std::vector<double>& hub_caps)
      : items_(std::move(items)), resources_(3 + hub_caps.size()), hub_caps_(hub_caps) {
    base_.assign(resources_, 0.0);
    base_[0] = fixed;
    forced_.assign(items_.size(), -1);
    std::vector<std::size_t> free_items;
    std::vector<double> ra(resources_);
    std::vector<double> rb(resources_);
    for (std::size_t idx = 0; idx < items_.size(); ++idx) {
      const PairItem& it = items_[idx];
      if (it.count == 0) {
        feasible_ = false;
        continue;
      }
      if (it.count == 1) {
        forced_[idx] = 0;
      } else {
        fill_resources(it.opt[0], ra);
        fill_resources(it.opt[1], rb);
        if (weakly_le(ra, rb)) {
          forced_[idx] = 0;
        } else if (weakly_le(rb, ra)) {
          forced_[idx] = 1;
        } else {
          free_items.push_back(idx);
          continue;
        }
      }
      fill_resources(it.opt[static_cast<std::size_t>(forced_[idx])], ra);
      for (std::size_t r = 0; r < resources_; ++r) base_[r] += ra[r];
    }
    std::stable_sort(free_items.begin(), free_items.end(), [&](std::size_t a, std::size_t b) {
      if (items_[a].demand != items_[b].demand) return items_[a].demand > items_[b].demand;
      return items_[a].key < items_[b].key;
    });
    free_ = std::move(free_items);
    m_ = free_.size();
    res_.assign(m_ * 2 * resources_, 0.0);
    for (std::size_t pos = 0; pos < m_; ++pos) {
      for (std::size_t o = 0; o < 2; ++o) {
        fill_resources(items_[free_[pos]].opt[o], ra);
        std::copy(ra.begin(), ra.end(), res_.begin() + static_cast<std::ptrdiff_t>((pos * 2 + o) * resources_));
      }
    }
    for (std::size_t h = 0; h < hub_caps_.size(); ++h) {
      const std::size_t r = 3 + h;
      double worst = base_[r];
      for (std::size_t pos = 0; pos < m_; ++pos) worst += std::max(at(pos, 0, r), at(pos, 1, r));
      if (base_[r] > hub_caps_[h] + kFeasibilityTolerance) feasible_ = false;
      if (worst > hub_caps_[h] + kFeasibilityTolerance) {
        load_constraints_.push_back({r, hub_caps_[h] + kFeasibilityTolerance});
      }
    }
    prepared_.assign(3 * resources_ + 3, 0);
    suffix_.resize(3 * resources_ + 3);
    lists_.resize(3 * resources_);
    base_choice_.resize(3);
    stack_.assign((m_ + 1) * resources_, 0.0);
    std::copy(base_.begin(), base_.end(), stack_.begin());
    choice_.assign(m_, 0);
  }

  [[nodiscard]] bool feasible_structure() const { return feasible_; }

  /// Lexicographic search for `cell`; `inc` is read for pruning and is
  /// expected to be updated by `on_leaf` when a leaf beats it.
  void search(const CellSpec& cell, const Incumbent& inc, const LeafHandler& on_leaf) {
    if (!feasible_) return;
    cell_ = &cell;
    inc_ = &inc;
    on_leaf_ = &on_leaf;
    constraints_.clear();
    for (std::size_t r = 0; r < 3; ++r) {
      if (std::isfinite(cell.eps[r])) constraints_.push_back({r, cell.eps[r] + kObjectiveResolution});
    }
    constraints_.insert(constraints_.end(), load_constraints_.begin(), load_constraints_.end());
    primary_ = relax(cell.order[0], constraints_);
    feasibility_.clear();
    for (std::size_t k = 0; k < constraints_.size(); ++k) {
      if (constraints_[k].resource >= 3) continue;
      FeasibilityCheck fc;
      fc.cap = constraints_[k].cap;
      for (std::size_t o = 0; o < constraints_.size(); ++o) {
        if (o != k) fc.others.push_back(constraints_[o]);
      }
      fc.rel = relax(constraints_[k].resource, fc.others);
      feasibility_.push_back(std::move(fc));
    }
    tie_key_.reset();

    // Sharpen the multipliers only where the quick ones leave the root open.
    for (FeasibilityCheck& fc : feasibility_) {
      const auto lb = relaxed_bound(fc.rel, 0, base_.data());
      if (lb && *lb <= fc.cap) refine(fc.rel, fc.cap + std::max(1.0, std::fabs(fc.cap)) * 1e-3);
    }
    const auto root = relaxed_bound(primary_, 0, base_.data());
    if (root) {
      const double lead_cut = inc.has ? inc.obj[cell.order[0]] + kObjectiveResolution : kInf;
      if (*root <= lead_cut) {
        refine(primary_, std::isfinite(lead_cut) ? lead_cut : *root + 0.02 * std::fabs(*root) + 1.0);
      }
    }
    prefer(primary_);
    visited_ = 0;
    tables_.clear();
    if (root && (!inc.has || *root < inc.obj[cell.order[0]] - kHalfStep)) improve_incumbent();
    dfs(0);
  }

  /// Relaxation keeping one constraint exact: its weights are rounded down to
  /// a grid of `delta` and a suffix DP gives, for each depth and remaining
  /// grid budget, the least completion value of the Lagrangian objective
  /// over the other constraints.
  struct KnapsackTable {
    std::size_t objective = 0;
    Constraint exact{};
    std::vector<Constraint> others;
    std::vector<double> lambda;
    double delta = 1.0;
    std::size_t budget = 0;
    std::vector<double> shift;  // sum_{pos >= d} min_o resource
    std::vector<double> value;  // (m + 1) x (budget + 1)
  };

  KnapsackTable build_table(const Relaxation& rel, std::size_t exact_index) const {
    constexpr std::size_t kBudget = 512;
    KnapsackTable t;
    t.objective = rel.objective;
    t.exact = rel.cs[exact_index];
    for (std::size_t k = 0; k < rel.cs.size(); ++k) {
      if (k == exact_index) continue;
      t.others.push_back(rel.cs[k]);
      t.lambda.push_back(rel.lambda[k]);
    }
    const std::size_t r = t.exact.resource;
    t.shift.assign(m_ + 1, 0.0);
    for (std::size_t pos = m_; pos-- > 0;) t.shift[pos] = t.shift[pos + 1] + std::min(at(pos, 0, r), at(pos, 1, r));
    const double slack = t.exact.cap - base_[r] - t.shift[0];
    if (slack < 0.0) {
      t.budget = 0;
      t.value.assign(m_ + 1, kInf);
      return t;
    }
    t.budget = kBudget;
    t.delta = std::max(slack, 1e-9 * std::max(1.0, std::fabs(t.exact.cap))) / static_cast<double>(kBudget);
    const std::size_t width = t.budget + 1;
    t.value.assign((m_ + 1) * width, 0.0);
    for (std::size_t pos = m_; pos-- > 0;) {
      std::array<double, 2> v{};
      std::array<std::size_t, 2> w{};
      const double lo = std::min(at(pos, 0, r), at(pos, 1, r));
      for (std::size_t o = 0; o < 2; ++o) {
        v[o] = at(pos, o, t.objective);
        for (std::size_t k = 0; k < t.others.size(); ++k) v[o] += t.lambda[k] * at(pos, o, t.others[k].resource);
        const double steps = std::floor((at(pos, o, r) - lo) / t.delta);
        w[o] = steps > static_cast<double>(t.budget) ? t.budget + 1 : static_cast<std::size_t>(steps);
      }
      const double* next = &t.value[(pos + 1) * width];
      double* cur = &t.value[pos * width];
      for (std::size_t q = 0; q < width; ++q) {
        double best = kInf;
        for (std::size_t o = 0; o < 2; ++o) {
          if (w[o] <= q) best = std::min(best, v[o] + next[q - w[o]]);
        }
        cur[q] = best;
      }
    }
    return t;
  }

  std::optional<double> table_bound(const KnapsackTable& t, std::size_t d, const double* S) const {
    if (t.budget == 0 && t.value.size() == m_ + 1) return std::nullopt;
    const double room = (t.exact.cap - S[t.exact.resource] - t.shift[d]) / t.delta;
    if (room < 0.0) return std::nullopt;
    const std::size_t q = room >= static_cast<double>(t.budget) ? t.budget : static_cast<std::size_t>(room);
    const double tail = t.value[d * (t.budget + 1) + q];
    if (!std::isfinite(tail)) return std::nullopt;
    double v = S[t.objective] + tail;
    double scale = std::fabs(v);
    for (std::size_t k = 0; k < t.others.size(); ++k) {
      v += t.lambda[k] * (S[t.others[k].resource] - t.others[k].cap);
      scale += t.lambda[k] * std::fabs(t.others[k].cap);
    }
    return v - 1e-12 * scale;
  }

  /// Greedy primal heuristic from the relaxation's preferred choices: repair
  /// violated caps, then apply improving single flips and pair swaps. A
  /// feasible result goes through the regular leaf path.
  void improve_incumbent() {
    const std::size_t lead = cell_->order[0];
    std::vector<int> x = first_;
    std::vector<double> total(base_);
    for (std::size_t pos = 0; pos < m_; ++pos) {
      for (std::size_t r = 0; r < resources_; ++r) total[r] += at(pos, static_cast<std::size_t>(x[pos]), r);
    }
    auto excess = [&](const std::vector<double>& t) {
      double e = 0.0;
      for (const Constraint& c : constraints_) {
        if (t[c.resource] > c.cap) e += (t[c.resource] - c.cap) / std::max(1.0, std::fabs(c.cap));
      }
      return e;
    };
    auto flip = [&](std::size_t pos) {
      const std::size_t o = static_cast<std::size_t>(x[pos]);
      for (std::size_t r = 0; r < resources_; ++r) total[r] += at(pos, 1 - o, r) - at(pos, o, r);
      x[pos] = 1 - x[pos];
    };
    std::vector<double> probe(resources_);
    auto excess_after = [&](std::size_t pos) {
      const std::size_t o = static_cast<std::size_t>(x[pos]);
      for (std::size_t r = 0; r < resources_; ++r) probe[r] = total[r] + at(pos, 1 - o, r) - at(pos, o, r);
      return excess(probe);
    };
    auto lead_delta = [&](std::size_t pos) {
      const std::size_t o = static_cast<std::size_t>(x[pos]);
      return at(pos, 1 - o, lead) - at(pos, o, lead);
    };

    double e = excess(total);
    while (e > 0.0) {
      std::size_t best = m_;
      double best_score = 0.0;
      for (std::size_t pos = 0; pos < m_; ++pos) {
        const double gain = e - excess_after(pos);
        if (gain <= 0.0) continue;
        const double score = gain / std::max(1e-12, lead_delta(pos) + 1e-9 * std::fabs(total[lead]));
        if (best == m_ || score > best_score || lead_delta(pos) <= 0.0) {
          best = pos;
          best_score = lead_delta(pos) <= 0.0 ? kInf : score;
        }
      }
      if (best == m_) return;
      flip(best);
      e = excess(total);
    }

    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t pos = 0; pos < m_; ++pos) {
        if (lead_delta(pos) < 0.0 && excess_after(pos) == 0.0) {
          flip(pos);
          changed = true;
        }
      }
      for (std::size_t a = 0; a < m_ && !changed; ++a) {
        for (std::size_t b = a + 1; b < m_ && !changed; ++b) {
          if (lead_delta(a) + lead_delta(b) >= 0.0) continue;
          flip(a);
          if (excess_after(b) == 0.0) {
            flip(b);
            changed = true;
          } else {
            flip(a);
          }
        }
      }
    }
    const Objectives z{total[0], total[1], total[2]};
    if (inc_->has && lex_compare(z, inc_->obj, cell_->order) >= 0) return;
    choice_ = x;
    (*on_leaf_)(choice_);
  }

  /// Tries first, at each depth, the option the relaxation prefers.
  void prefer(const Relaxation& rel) {
    first_.assign(m_, 0);
    if (rel.infeasible) return;
    for (std::size_t pos = 0; pos < m_; ++pos) {
      double w0 = at(pos, 0, rel.objective);
      double w1 = at(pos, 1, rel.objective);
      for (std::size_t k = 0; k < rel.cs.size(); ++k) {
        w0 += rel.lambda[k] * at(pos, 0, rel.cs[k].resource);
        w1 += rel.lambda[k] * at(pos, 1, rel.cs[k].resource);
      }
      first_[pos] = w1 < w0 ? 1 : 0;
    }
  }

  [[nodiscard]] RoutePlan plan(std::size_t n, const std::vector<int>& free_choice) const {
    RoutePlan out(n);
    for (std::size_t idx = 0; idx < items_.size(); ++idx) {
      if (forced_[idx] >= 0) {
        out.at(items_[idx].i, items_[idx].j) = items_[idx].opt[static_cast<std::size_t>(forced_[idx])].route;
      }
    }
    for (std::size_t pos = 0; pos < m_; ++pos) {
      const PairItem& it = items_[free_[pos]];
      out.at(it.i, it.j) = it.opt[static_cast<std::size_t>(free_choice[pos])].route;
    }
    return out;
  }

 private:
  [[nodiscard]] double at(std::size_t pos, std::size_t o, std::size_t r) const {
    return res_[(pos * 2 + o) * resources_ + r];
  }

  void fill_resources(const Option& o, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = o.obj[0];
    out[1] = o.obj[1];
    out[2] = o.obj[2];
    if (o.slot1 >= 0) out[3 + static_cast<std::size_t>(o.slot1)] += o.load;
    if (o.slot2 >= 0) out[3 + static_cast<std::size_t>(o.slot2)] += o.load;
  }

  static bool weakly_le(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (a[r] > b[r]) return false;
    }
    return true;
  }

  void prepare_objective(std::size_t s) {
    const std::size_t key = 3 * resources_ + s;
    if (prepared_[key]) return;
    prepared_[key] = 1;
    auto& choice = base_choice_[s];
    choice.assign(m_, 0);
    auto& suffix = suffix_[key];
    suffix.assign(m_ + 1, 0.0);
    for (std::size_t pos = m_; pos-- > 0;) {
      const double a = at(pos, 0, s);
      const double b = at(pos, 1, s);
      choice[pos] = b < a ? 1 : 0;
      suffix[pos] = suffix[pos + 1] + std::min(a, b);
    }
  }

  struct Step {
    std::size_t pos;
    double cost;    // increase in the bounded objective
    double relief;  // decrease in the constrained resource
  };

  void prepare_pair(std::size_t s, std::size_t r) {
    prepare_objective(s);
    const std::size_t key = s * resources_ + r;
    if (prepared_[key]) return;
    prepared_[key] = 1;
    const auto& choice = base_choice_[s];
    auto& suffix = suffix_[key];
    suffix.assign(m_ + 1, 0.0);
    auto& steps = lists_[key];
    steps.clear();
    for (std::size_t pos = m_; pos-- > 0;) {
      const std::size_t b = static_cast<std::size_t>(choice[pos]);
      const std::size_t alt = 1 - b;
      suffix[pos] = suffix[pos + 1] + at(pos, b, r);
      const double relief = at(pos, b, r) - at(pos, alt, r);
      if (relief > 0.0) steps.push_back({pos, at(pos, alt, s) - at(pos, b, s), relief});
    }
    std::sort(steps.begin(), steps.end(), [](const Step& x, const Step& y) {
      const double lhs = x.cost * y.relief;
      const double rhs = y.cost * x.relief;
      if (lhs != rhs) return lhs < rhs;
      return x.pos < y.pos;
    });
  }

  /// Lower bound on objective `s` over completions of the node at depth `d`
  /// satisfying `cs`: the largest single-constraint fractional relaxation.
  std::optional<double> bound(std::size_t s, const std::vector<Constraint>& cs, std::size_t d,
                              const double* S) {
    prepare_objective(s);
    const double base = S[s] + suffix_[3 * resources_ + s][d];
    double best = base;
    for (const Constraint& c : cs) {
      prepare_pair(s, c.resource);
      const std::size_t key = s * resources_ + c.resource;
      double need = S[c.resource] + suffix_[key][d] - c.cap;
      if (need <= 0.0) continue;
      double add = 0.0;
      for (const Step& st : lists_[key]) {
        if (st.pos < d) continue;
        if (st.relief >= need) {
          add += st.cost * (need / st.relief);
          need = 0.0;
          break;
        }
        add += st.cost;
        need -= st.relief;
      }
      if (need > 1e-12 * std::max(1.0, std::fabs(c.cap))) return std::nullopt;
      best = std::max(best, base + add);
    }
    return best;
  }

  Relaxation relax(std::size_t s, const std::vector<Constraint>& cs) const {
    Relaxation rel;
    rel.objective = s;
    rel.cs = cs;
    rel.lambda.assign(cs.size(), 0.0);
    std::vector<double> w0(m_);
    std::vector<double> w1(m_);
    for (std::size_t pos = 0; pos < m_; ++pos) {
      w0[pos] = at(pos, 0, s);
      w1[pos] = at(pos, 1, s);
    }
    struct Flip {
      double at;
      double drop;
    };
    std::vector<Flip> flips;
    for (int round = 0; round < 4 && !cs.empty(); ++round) {
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::size_t r = cs[k].resource;
        const double old = rel.lambda[k];
        for (std::size_t pos = 0; pos < m_; ++pos) {
          w0[pos] -= old * at(pos, 0, r);
          w1[pos] -= old * at(pos, 1, r);
        }
        // Maximize the concave piecewise-linear function of lambda_k >= 0.
        double slope = base_[r] - cs[k].cap;
        flips.clear();
        for (std::size_t pos = 0; pos < m_; ++pos) {
          const double r0 = at(pos, 0, r);
          const double r1 = at(pos, 1, r);
          const bool first_small = r0 <= r1;
          const double lo_r = first_small ? r0 : r1;
          const double hi_r = first_small ? r1 : r0;
          const double lo_w = first_small ? w0[pos] : w1[pos];
          const double hi_w = first_small ? w1[pos] : w0[pos];
          // For large lambda the small-r option wins; before the flip the other.
          if (hi_r == lo_r || lo_w <= hi_w) {
            slope += lo_r;
          } else {
            slope += hi_r;
            flips.push_back({(lo_w - hi_w) / (hi_r - lo_r), hi_r - lo_r});
          }
        }
        double best = 0.0;
        if (slope > 0.0) {
          std::sort(flips.begin(), flips.end(), [](const Flip& a, const Flip& b) { return a.at < b.at; });
          best = kInf;
          for (const Flip& f : flips) {
            slope -= f.drop;
            if (slope <= 0.0) {
              best = f.at;
              break;
            }
          }
          if (!std::isfinite(best)) {
            rel.infeasible = true;  // constraint k cannot be met at all
            return rel;
          }
        }
        rel.lambda[k] = best;
        for (std::size_t pos = 0; pos < m_; ++pos) {
          w0[pos] += best * at(pos, 0, r);
          w1[pos] += best * at(pos, 1, r);
        }
      }
    }
    rel.suffix.assign(m_ + 1, 0.0);
    for (std::size_t pos = m_; pos-- > 0;) rel.suffix[pos] = rel.suffix[pos + 1] + std::min(w0[pos], w1[pos]);
    return rel;
  }

  /// Projected subgradient ascent on the multipliers (Polyak steps toward
  /// `target`); keeps the best root bound seen.
  void refine(Relaxation& rel, double target) const {
    if (rel.infeasible || rel.cs.empty()) return;
    const std::size_t nc = rel.cs.size();
    std::vector<double> lambda = rel.lambda;
    std::vector<double> best_lambda = lambda;
    std::vector<double> g(nc);
    double best = -kInf;
    double theta = 1.0;
    int stall = 0;
    for (int it = 0; it < 80; ++it) {
      double value = base_[rel.objective];
      for (std::size_t k = 0; k < nc; ++k) {
        value += lambda[k] * (base_[rel.cs[k].resource] - rel.cs[k].cap);
        g[k] = base_[rel.cs[k].resource] - rel.cs[k].cap;
      }
      for (std::size_t pos = 0; pos < m_; ++pos) {
        double w0 = at(pos, 0, rel.objective);
        double w1 = at(pos, 1, rel.objective);
        for (std::size_t k = 0; k < nc; ++k) {
          w0 += lambda[k] * at(pos, 0, rel.cs[k].resource);
          w1 += lambda[k] * at(pos, 1, rel.cs[k].resource);
        }
        const std::size_t o = w1 < w0 ? 1 : 0;
        value += std::min(w0, w1);
        for (std::size_t k = 0; k < nc; ++k) g[k] += at(pos, o, rel.cs[k].resource);
      }
      if (value > best) {
        best = value;
        best_lambda = lambda;
        stall = 0;
      } else if (++stall >= 8) {
        theta *= 0.5;
        stall = 0;
      }
      if (best >= target) break;
      double norm = 0.0;
      for (std::size_t k = 0; k < nc; ++k) {
        if (lambda[k] <= 0.0 && g[k] < 0.0) g[k] = 0.0;
        norm += g[k] * g[k];
      }
      if (norm == 0.0) break;  // optimal
      const double step = theta * (target - value) / norm;
      for (std::size_t k = 0; k < nc; ++k) lambda[k] = std::max(0.0, lambda[k] + step * g[k]);
    }
    const auto current = relaxed_bound(rel, 0, base_.data());
    if (current && *current >= best) return;
    rel.lambda = best_lambda;
    rel.suffix.assign(m_ + 1, 0.0);
    for (std::size_t pos = m_; pos-- > 0;) {
      double a = at(pos, 0, rel.objective);
      double b = at(pos, 1, rel.objective);
      for (std::size_t k = 0; k < nc; ++k) {
        a += rel.lambda[k] * at(pos, 0, rel.cs[k].resource);
        b += rel.lambda[k] * at(pos, 1, rel.cs[k].resource);
      }
      rel.suffix[pos] = rel.suffix[pos + 1] + std::min(a, b);
    }
  }

  std::optional<double> relaxed_bound(const Relaxation& rel, std::size_t d, const double* S) const {
    if (rel.infeasible) return std::nullopt;
    double v = S[rel.objective] + rel.suffix[d];
    double scale = std::fabs(v);
    for (std::size_t k = 0; k < rel.cs.size(); ++k) {
      const double term = rel.lambda[k] * (S[rel.cs[k].resource] - rel.cs[k].cap);
      v += term;
      scale += std::fabs(rel.lambda[k]) * std::fabs(rel.cs[k].cap);
    }
    return v - 1e-12 * scale;
  }

  /// Combined lower bound: Lagrangian first (O(1)), fractional only if needed.
  std::optional<double> node_bound(std::size_t s, const Relaxation& rel,
                                   const std::vector<Constraint>& cs, std::size_t d,
                                   const double* S, double prune_above) {
    const auto lg = relaxed_bound(rel, d, S);
    if (!lg) return std::nullopt;
    if (*lg > prune_above) return lg;
    const auto fr = bound(s, cs, d, S);
    if (!fr) return std::nullopt;
    return std::max(*lg, *fr);
  }

  void refresh_tie_relaxations() {
    if (tie_key_ && *tie_key_ == inc_->obj) return;
    tie_key_ = inc_->obj;
    const Order& ord = cell_->order;
    const Objectives& io = inc_->obj;
    tie2_constraints_ = constraints_;
    tie2_constraints_.push_back({ord[0], io[ord[0]] + kObjectiveResolution});
    tie3_constraints_ = tie2_constraints_;
    tie3_constraints_.push_back({ord[1], io[ord[1]] + kObjectiveResolution});
    secondary_ = relax(ord[1], tie2_constraints_);
    tertiary_ = relax(ord[2], tie3_constraints_);
  }

  bool node_ok(std::size_t d) {
    const double* S = &stack_[d * resources_];
    const Order& ord = cell_->order;
    // Each capped objective must stay reachable under the remaining caps.
    for (const FeasibilityCheck& fc : feasibility_) {
      const auto lb = node_bound(fc.rel.objective, fc.rel, fc.others, d, S, fc.cap);
      if (!lb || *lb > fc.cap) return false;
    }
    const double cut_p = inc_->has ? inc_->obj[ord[0]] + kObjectiveResolution : kInf;
    auto lbp = node_bound(ord[0], primary_, constraints_, d, S, cut_p);
    if (!lbp) return false;
    if (++visited_ == kTableThreshold) {
      for (std::size_t k = 0; k < primary_.cs.size() && !primary_.infeasible; ++k) {
        tables_.push_back(build_table(primary_, k));
      }
    }
    for (const KnapsackTable& t : tables_) {
      if (*lbp > cut_p) break;
      const auto tb = table_bound(t, d, S);
      if (!tb) return false;
      lbp = std::max(*lbp, *tb);
    }
    if (!inc_->has) return true;
    const Objectives& io = inc_->obj;
    if (*lbp < io[ord[0]] - kHalfStep) return true;
    if (*lbp > cut_p) return false;
    // Only ties on the leading objective can still win.
    refresh_tie_relaxations();
    const double cut_s = io[ord[1]] + kObjectiveResolution;
    const auto lbs = node_bound(ord[1], secondary_, tie2_constraints_, d, S, cut_s);
    if (!lbs) return false;
    if (*lbs < io[ord[1]] - kHalfStep) return true;
    if (*lbs > cut_s) return false;
    const double cut_t = io[ord[2]] - kHalfStep;
    const auto lbt = node_bound(ord[2], tertiary_, tie3_constraints_, d, S, cut_t);
    if (!lbt) return false;
    return *lbt < cut_t;
  }

  void dfs(std::size_t d) {
    if (!node_ok(d)) return;
    const double* S = &stack_[d * resources_];
    if (d == m_) {
      const Objectives z{S[0], S[1], S[2]};
      if (inc_->has && lex_compare(z, inc_->obj, cell_->order) >= 0) return;
      (*on_leaf_)(choice_);
      return;
    }
    const int first = first_.empty() ? (at(d, 1, cell_->order[0]) < at(d, 0, cell_->order[0]) ? 1 : 0)
                                     : first_[d];
    double* next = &stack_[(d + 1) * resources_];
    for (int t = 0; t < 2; ++t) {
      const int o = t == 0 ? first : 1 - first;
      const double* add = &res_[(d * 2 + static_cast<std::size_t>(o)) * resources_];
      for (std::size_t r = 0; r < resources_; ++r) next[r] = S[r] + add[r];
      choice_[d] = o;
      dfs(d + 1);
    }
  }

  std::vector<PairItem> items_;
  std::size_t resources_;
  std::vector<double> hub_caps_;
  std::vector<double> base_;
  std::vector<int> forced_;
  std::vector<std::size_t> free_;
  std::size_t m_ = 0;
  std::vector<double> res_;
  std::vector<Constraint> load_constraints_;
  bool feasible_ = true;

  std::vector<char> prepared_;
  std::vector<std::vector<double>> suffix_;
  std::vector<std::vector<Step>> lists_;
  std::vector<std::vector<int>> base_choice_;

  std::vector<double> stack_;
  std::vector<int> choice_;
  std::vector<int> first_;
  std::vector<Constraint> constraints_;
  std::vector<Constraint> tie2_constraints_;
  std::vector<Constraint> tie3_constraints_;
  struct FeasibilityCheck {
    double cap = 0.0;
    std::vector<Constraint> others;
    Relaxation rel;
  };

  static constexpr std::size_t kTableThreshold = 4096;
  std::size_t visited_ = 0;
  std::vector<KnapsackTable> tables_;
  Relaxation primary_;
  std::vector<FeasibilityCheck> feasibility_;
  Relaxation secondary_;
  Relaxation tertiary_;
  std::optional<Objectives> tie_key_;
  const CellSpec* cell_ = nullptr;
  const Incumbent* inc_ = nullptr;
  const LeafHandler* on_leaf_ = nullptr;
};

// ---------------------------------------------------------------------------
// All designs of an instance with cheap per-design lower bounds

class DesignCatalog {
 public:
  DesignCatalog(const ProblemInstance& inst, double alpha_prime, std::uint64_t budget)
      : inst_(inst), alpha_(alpha_prime) {
    const std::uint64_t bound = configuration_count_bound(inst.n, inst.p);
    if (bound > budget) throw BudgetExceeded(bound, budget);
    pairs_ = pair_basics(inst, alpha_prime);
    std::vector<std::vector<std::uint8_t>> cand;
    for_each_hub_set(inst.n, inst.p, [&](const std::vector<std::size_t>& hubs) {
      if (!allocation_candidates(inst, hubs, cand)) return;
      const std::uint32_t set_id = static_cast<std::uint32_t>(tables_.size());
      tables_.push_back(build_hub_table(inst, pairs_, hubs));
      const HubSetTable& table = tables_.back();
      for_each_allocation(cand, [&](const std::vector<std::uint8_t>& slots) {
        Objectives lb{table.fixed, 0.0, 0.0};
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
          const PairBasics& pb = pairs_[p];
          const std::size_t idx = table.index(p, slots[pb.i], slots[pb.j]);
          const bool hub_ok = table.ok[idx] != 0;
          if (!pb.direct_ok && !hub_ok) return;  // some pair cannot be served
          for (std::size_t r = 0; r < 3; ++r) {
            double v = kInf;
            if (pb.direct_ok) v = pb.direct.obj[r];
            if (hub_ok) v = std::min(v, table.options[idx].obj[r]);
            lb[r] += v;
          }
        }
        designs_.push_back({set_id, static_cast<std::uint32_t>(slots_.size()), lb});
        slots_.insert(slots_.end(), slots.begin(), slots.end());
      });
    });
  }

  [[nodiscard]] std::size_t size() const { return designs_.size(); }
  [[nodiscard]] const Objectives& lower_bound(std::size_t c) const { return designs_[c].lb; }

  [[nodiscard]] NetworkDesign design(std::size_t c) const {
    const Entry& e = designs_[c];
    const HubSetTable& table = tables_[e.set];
    std::vector<std::size_t> assignment(inst_.n);
    for (std::size_t i = 0; i < inst_.n; ++i) assignment[i] = table.hubs[slots_[e.offset + i]];
    return NetworkDesign::from_assignment(inst_.n, assignment);
  }

  [[nodiscard]] RoutingSearch search(std::size_t c) const {
    const Entry& e = designs_[c];
    const HubSetTable& table = tables_[e.set];
    std::vector<PairItem> items(pairs_.size());
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const PairBasics& pb = pairs_[p];
      PairItem& it = items[p];
      it.i = pb.i;
      it.j = pb.j;
      it.key = pb.i * inst_.n + pb.j;
      it.demand = pb.demand;
      if (pb.direct_ok) it.opt[static_cast<std::size_t>(it.count++)] = pb.direct;
      const std::size_t idx = table.index(p, slots_[e.offset + pb.i], slots_[e.offset + pb.j]);
      if (table.ok[idx]) it.opt[static_cast<std::size_t>(it.count++)] = table.options[idx];
    }
    std::vector<double> caps;
    for (std::size_t k : table.hubs) caps.push_back(inst_.capacity[k]);
    return RoutingSearch(std::move(items), table.fixed, caps);
  }

 private:
  struct Entry {
    std::uint32_t set;
    std::uint32_t offset;
    Objectives lb;
  };

  const ProblemInstance& inst_;
  double alpha_;
  std::vector<PairBasics> pairs_;
  std::vector<HubSetTable> tables_;
  std::vector<Entry> designs_;
  std::vector<std::uint8_t> slots_;
};

/// Solves several cells sharing the same leading objective in one pass over
/// the designs, ordered by that objective's cheap lower bound. Any solution
/// found for one cell is offered to every other cell it fits.
std::vector<Incumbent> solve_cells(const ProblemInstance& inst, const DesignCatalog& catalog,
                                   const std::vector<CellSpec>& cells,
                                   const std::vector<EvaluatedSolution>& seeds,
                                   double alpha_prime) {
  std::vector<Incumbent> inc(cells.size());
  if (cells.empty()) return inc;
  const std::size_t lead = cells.front().order[0];

  auto offer = [&](const EvaluatedSolution& sol) {
    const Objectives z = as_array(sol.objectives);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!meets(z, cells[k].eps)) continue;
      if (inc[k].has && lex_compare(z, inc[k].obj, cells[k].order) >= 0) continue;
      inc[k].has = true;
      inc[k].obj = {round_objective(z[0]), round_objective(z[1]), round_objective(z[2])};
      inc[k].solution = sol;
    }
  };
  for (const auto& s : seeds) offer(s);

  std::vector<std::size_t> order(catalog.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return catalog.lower_bound(a)[lead] < catalog.lower_bound(b)[lead];
  });

  std::vector<std::size_t> active;
  for (std::size_t c : order) {
    const Objectives& lb = catalog.lower_bound(c);
    bool open = false;
    active.clear();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (inc[k].has && lb[lead] > inc[k].obj[lead] + kObjectiveResolution) continue;
      open = true;
      bool fits = true;
      for (std::size_t r = 0; r < 3; ++r) {
        if (std::isfinite(cells[k].eps[r]) && lb[r] > cells[k].eps[r] + kObjectiveResolution) fits = false;
      }
      if (fits) active.push_back(k);
    }
    if (!open) break;
    if (active.empty()) continue;

    RoutingSearch search = catalog.search(c);
    if (!search.feasible_structure()) continue;
    std::optional<NetworkDesign> design;
    for (std::size_t k : active) {
      const RoutingSearch::LeafHandler on_leaf = [&](const std::vector<int>& choice) {
        if (!design) design = catalog.design(c);
        EvaluatedSolution sol;
        sol.design = *design;
        sol.plan = search.plan(inst.n, choice);
        sol.objectives = evaluate_unchecked(inst, sol.design, sol.plan, alpha_prime);
        sol.alpha_prime = alpha_prime;
        offer(sol);
      };
      search.search(cells[k], inc[k], on_leaf);
    }
  }
  return inc;
}

}  // namespace

// ---------------------------------------------------------------------------

BudgetExceeded::BudgetExceeded(std::uint64_t count, std::uint64_t budget)
    : std::runtime_error("configuration count " + std::to_string(count) + " exceeds budget " +
                         std::to_string(budget)),
      count_(count),
      budget_(budget) {}

std::uint64_t configuration_count_bound(std::size_t n, std::size_t p) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;  // C(n, h)
  for (std::size_t h = 1; h <= std::min(n, p); ++h) {
    binom = binom * (n - h + 1) / h;
    unsigned __int128 term = binom;
    for (std::size_t e = 0; e < n - h; ++e) {
      term *= h;
      if (term > kMax) return kMax;
    }
    total += term;
    if (total > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(total);
}

void for_each_configuration(const ProblemInstance& inst,
                            const std::function<void(const NetworkDesign&)>& visit,
                            std::uint64_t budget) {
  const std::uint64_t bound = configuration_count_bound(inst.n, inst.p);
  if (bound > budget) throw BudgetExceeded(bound, budget);
  std::vector<std::vector<std::uint8_t>> cand;
  for_each_hub_set(inst.n, inst.p, [&](const std::vector<std::size_t>& hubs) {
    if (!allocation_candidates(inst, hubs, cand)) return;
    std::vector<std::size_t> assignment(inst.n);
    for_each_allocation(cand, [&](const std::vector<std::uint8_t>& slots) {
      for (std::size_t i = 0; i < inst.n; ++i) assignment[i] = hubs[slots[i]];
      visit(NetworkDesign::from_assignment(inst.n, assignment));
    });
  });
}

std::vector<NetworkDesign> enumerate_configurations(const ProblemInstance& inst,
                                                    std::uint64_t budget) {
  std::vector<NetworkDesign> out;
  for_each_configuration(inst, [&](const NetworkDesign& d) { out.push_back(d); }, budget);
  return out;
}

std::optional<EvaluatedSolution> solve_routing(const ProblemInstance& inst,
                                               const NetworkDesign& design, double eps2,
                                               double eps3, double alpha_prime) {
  if (!check_design(inst, design).empty()) return std::nullopt;
  const std::vector<std::size_t> hubs = design.hubs();
  std::vector<int> slot(inst.n, -1);
  for (std::size_t a = 0; a < hubs.size(); ++a) slot[hubs[a]] = static_cast<int>(a);

  std::vector<PairItem> items;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      PairItem it;
      it.i = i;
      it.j = j;
      it.key = i * inst.n + j;
      it.demand = defuzzify(inst.demand(i, j), alpha_prime);
      for (const Route& r : feasible_routes(inst, design, i, j)) {
        const int s1 = r.uses_hub() ? slot[r.first] : -1;
        const int s2 = r.kind == RouteKind::TwoHub ? slot[r.second] : -1;
        it.opt[static_cast<std::size_t>(it.count++)] = make_option(inst, r, i, j, it.demand, s1, s2);
      }
      items.push_back(it);
    }
  }
  std::vector<double> caps;
  for (std::size_t k : hubs) caps.push_back(inst.capacity[k]);
  RoutingSearch search(std::move(items), fixed_cost(inst, design), caps);

  CellSpec cell;
  cell.eps = {kInf, eps2, eps3};
  Incumbent inc;
  const RoutingSearch::LeafHandler on_leaf = [&](const std::vector<int>& choice) {
    EvaluatedSolution sol;
    sol.design = design;
    sol.plan = search.plan(inst.n, choice);
    sol.objectives = evaluate_unchecked(inst, design, sol.plan, alpha_prime);
    sol.alpha_prime = alpha_prime;
    const Objectives z = as_array(sol.objectives);
    if (!meets(z, cell.eps)) return;
    if (inc.has && lex_compare(z, inc.obj, cell.order) >= 0) return;
    inc.has = true;
    inc.obj = {round_objective(z[0]), round_objective(z[1]), round_objective(z[2])};
    inc.solution = std::move(sol);
  };
  search.search(cell, inc, on_leaf);
  if (!inc.has) return std::nullopt;
  return inc.solution;
}

EpsilonGrid EpsilonGrid::span(std::size_t segments_z2, std::size_t segments_z3, double min_z2,
                              double max_z2, double min_z3, double max_z3) {
  if (segments_z2 < 1 || segments_z3 < 1) {
    throw std::invalid_argument("epsilon grid needs at least one segment per objective");
  }
  EpsilonGrid g;
  g.segments_z2 = segments_z2;
  g.segments_z3 = segments_z3;
  auto fill = [](std::size_t s, double lo, double hi, std::vector<double>& out) {
    out.clear();
    for (std::size_t t = 1; t <= s; ++t) {
      out.push_back(t == s ? hi : lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(s));
    }
  };
  fill(segments_z2, min_z2, max_z2, g.eps2);
  fill(segments_z3, min_z3, max_z3, g.eps3);
  return g;
}

double PayoffTable::min_of(std::size_t m) const { return rows[m].objectives[m]; }

double PayoffTable::max_of(std::size_t m) const {
  double v = rows[0].objectives[m];
  for (const auto& r : rows) v = std::max(v, r.objectives[m]);
  return v;
}

std::optional<EvaluatedSolution> solve_lexicographic(const ProblemInstance& inst,
                                                     std::array<std::size_t, 3> order,
                                                     std::array<double, 3> eps,
                                                     double alpha_prime, std::uint64_t budget) {
  const DesignCatalog catalog(inst, alpha_prime, budget);
  CellSpec cell;
  cell.order = order;
  cell.eps = eps;
  auto inc = solve_cells(inst, catalog, {cell}, {}, alpha_prime);
  if (!inc.front().has) return std::nullopt;
  return inc.front().solution;
}

EpsilonConstraintResult run_epsilon_constraint(const ProblemInstance& inst, EpsilonGrid grid,
                                               double alpha_prime, std::uint64_t budget) {
  const DesignCatalog catalog(inst, alpha_prime, budget);
  EpsilonConstraintResult result;

  // Individual optima give the ranges of the secondary objectives.
  const std::array<Order, 3> payoff_orders{Order{0, 1, 2}, Order{1, 0, 2}, Order{2, 0, 1}};
  std::vector<EvaluatedSolution> seeds;
  for (std::size_t m = 0; m < 3; ++m) {
    CellSpec cell;
    cell.order = payoff_orders[m];
    auto inc = solve_cells(inst, catalog, {cell}, seeds, alpha_prime);
    if (!inc.front().has) {
      throw NoFeasibleSolution("instance has no feasible design and routing");
    }
    result.payoff.rows[m] = inc.front().solution;
    seeds.push_back(inc.front().solution);
  }

  const auto lo = [&](std::size_t m) { return round_objective(result.payoff.min_of(m)); };
  const auto hi = [&](std::size_t m) { return round_objective(result.payoff.max_of(m)); };
  result.grid = EpsilonGrid::span(grid.segments_z2, grid.segments_z3, lo(1), hi(1), lo(2), hi(2));

  std::vector<CellSpec> cells;
  for (double e2 : result.grid.eps2) {
    for (double e3 : result.grid.eps3) {
      CellSpec cell;
      cell.eps = {kInf, e2, e3};
      cells.push_back(cell);
    }
  }
  const auto inc = solve_cells(inst, catalog, cells, seeds, alpha_prime);

  std::vector<EvaluatedSolution> found;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    GridCell gc;
    gc.eps2 = cells[k].eps[1];
    gc.eps3 = cells[k].eps[2];
    if (inc[k].has) {
      gc.solution = inc[k].solution;
      found.push_back(inc[k].solution);
    }
    result.cells.push_back(std::move(gc));
  }
  result.front = make_front(std::move(found));
  return result;
}

ParetoFront epsilon_constraint_front(const ProblemInstance& inst, const EpsilonGrid& grid,
                                     double alpha_prime, std::uint64_t budget) {
  return run_epsilon_constraint(inst, grid, alpha_prime, budget).front;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

/// Routes legal for (i, j) under allocation `a`, found by testing every
/// Direct / one-hub / two-hub candidate against the allocation rules.
std::vector<Route> literal_routes(const ProblemInstance& inst, const std::vector<std::size_t>& a,
                                  const std::vector<char>& open, std::size_t i, std::size_t j) {
  std::vector<Route> out;
  auto keep = [&](const Route& r) {
    if (route_time(inst, r, i, j) <= inst.max_transfer_time(i, j) + kFeasibilityTolerance) {
      out.push_back(r);
    }
  };
  keep(Route::direct());
  for (std::size_t k = 0; k < inst.n; ++k) {
    if (open[k] && a[i] == k && a[j] == k) keep(Route::one_hub(k));
  }
  for (std::size_t k = 0; k < inst.n; ++k) {
    for (std::size_t l = 0; l < inst.n; ++l) {
      if (k != l && open[k] && open[l] && a[i] == k && a[j] == l) keep(Route::two_hub(k, l));
    }
  }
  return out;
}

struct DpState {
  Objectives z;
  std::uint32_t parent;
  std::uint8_t option;
};

}  // namespace

ParetoFront brute_force_oracle(const ProblemInstance& inst, double alpha_prime) {
  const std::size_t n = inst.n;
  if (n > kOracleMaxNodes) {
    throw std::invalid_argument("oracle supports at most " + std::to_string(kOracleMaxNodes) +
                                " nodes, got " + std::to_string(n));
  }
  std::vector<EvaluatedSolution> candidates;
  std::vector<std::size_t> a(n, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;

  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      a[i] = static_cast<std::size_t>(c % n);
      c /= n;
    }
    const NetworkDesign design = NetworkDesign::from_assignment(n, a);
    if (!check_design(inst, design).empty()) continue;

    const std::vector<std::size_t> hubs = design.hubs();
    const std::size_t nh = hubs.size();
    std::vector<std::size_t> slot(n, 0);
    for (std::size_t s = 0; s < nh; ++s) slot[hubs[s]] = s;

    struct PairOptions {
      std::size_t i, j;
      std::vector<Route> routes;
      std::vector<Objectives> obj;
      std::vector<std::vector<double>> load;  // per option, per hub slot
    };
    std::vector<PairOptions> pairs;
    bool serviceable = true;
    for (std::size_t i = 0; i < n && serviceable; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        PairOptions po{i, j, literal_routes(inst, a, design.hub_open, i, j), {}, {}};
        if (po.routes.empty()) {
          serviceable = false;
          break;
        }
        const double q = defuzzify(inst.demand(i, j), alpha_prime);
        for (const Route& r : po.routes) {
          po.obj.push_back(as_array(pair_objectives(inst, r, i, j, q)));
          std::vector<double> l(nh, 0.0);
          if (r.uses_hub()) l[slot[r.first]] += q;
          if (r.kind == RouteKind::TwoHub) l[slot[r.second]] += q;
          po.load.push_back(std::move(l));
        }
        pairs.push_back(std::move(po));
      }
    }
    if (!serviceable) continue;

    // Load still addable to each hub after step t.
    std::vector<std::vector<double>> remaining(pairs.size() + 1, std::vector<double>(nh, 0.0));
    for (std::size_t t = pairs.size(); t-- > 0;) {
      for (std::size_t s = 0; s < nh; ++s) {
        double mx = 0.0;
        for (const auto& l : pairs[t].load) mx = std::max(mx, l[s]);
        remaining[t][s] = remaining[t + 1][s] + mx;
      }
    }
    std::vector<double> cap(nh);
    for (std::size_t s = 0; s < nh; ++s) cap[s] = inst.capacity[hubs[s]] + kFeasibilityTolerance;

    std::vector<std::vector<DpState>> layers(pairs.size() + 1);
    std::vector<std::vector<double>> layer_loads(pairs.size() + 1);
    layers[0].push_back({{fixed_cost(inst, design), 0.0, 0.0}, 0, 0});
    layer_loads[0].assign(nh, 0.0);

    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const auto& prev = layers[t];
      const auto& prev_loads = layer_loads[t];
      std::vector<DpState> next;
      std::vector<double> next_loads;
      for (std::size_t s = 0; s < prev.size(); ++s) {
        for (std::size_t o = 0; o < pairs[t].routes.size(); ++o) {
          DpState st{prev[s].z, static_cast<std::uint32_t>(s), static_cast<std::uint8_t>(o)};
          for (std::size_t r = 0; r < 3; ++r) st.z[r] += pairs[t].obj[o][r];
          bool ok = true;
          const std::size_t base = next_loads.size();
          for (std::size_t h = 0; h < nh; ++h) {
            const double l = prev_loads[s * nh + h] + pairs[t].load[o][h];
            if (l > cap[h]) ok = false;
            next_loads.push_back(l);
          }
          if (!ok) {
            next_loads.resize(base);
            continue;
          }
          next.push_back(st);
        }
      }
      // Discard a partial plan only if another is no worse in every objective
      // and in every hub load that could still hit its capacity.
      std::vector<std::size_t> idx(next.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t x, std::size_t y) { return next[x].z < next[y].z; });
      const auto& rem = remaining[t + 1];
      std::vector<std::size_t> kept;
      for (std::size_t x : idx) {
        bool dominated = false;
        for (std::size_t y : kept) {
          const DpState& a_st = next[y];
          const DpState& b_st = next[x];
          if (a_st.z[0] > b_st.z[0] || a_st.z[1] > b_st.z[1] || a_st.z[2] > b_st.z[2]) continue;
          bool loads_ok = true;
          for (std::size_t h = 0; h < nh && loads_ok; ++h) {
            const double la = next_loads[y * nh + h];
            const double lb = next_loads[x * nh + h];
            loads_ok = la <= lb || la + rem[h] <= cap[h];
          }
          if (loads_ok) {
            dominated = true;
            break;
          }
        }
        if (!dominated) kept.push_back(x);
      }
      std::sort(kept.begin(), kept.end());
      layers[t + 1].reserve(kept.size());
      layer_loads[t + 1].reserve(kept.size() * nh);
      for (std::size_t x : kept) {
        layers[t + 1].push_back(next[x]);
        for (std::size_t h = 0; h < nh; ++h) layer_loads[t + 1].push_back(next_loads[x * nh + h]);
      }
    }

    for (std::size_t s = 0; s < layers.back().size(); ++s) {
      EvaluatedSolution sol;
      sol.design = design;
      sol.plan = RoutePlan(n);
      sol.alpha_prime = alpha_prime;
      std::size_t cur = s;
      for (std::size_t t = pairs.size(); t-- > 0;) {
        const DpState& st = layers[t + 1][cur];
        sol.plan.at(pairs[t].i, pairs[t].j) = pairs[t].routes[st.option];
        cur = st.parent;
      }
      sol.objectives = evaluate_unchecked(inst, design, sol.plan, alpha_prime);
      candidates.push_back(std::move(sol));
    }
    if (candidates.size() > 20000) candidates = make_front(std::move(candidates)).solutions;
  }
  return make_front(std::move(candidates));
}

}  // namespace hubloc
