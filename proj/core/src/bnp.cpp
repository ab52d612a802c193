#include "ors/bnp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "ors/follower.hpp"
#include "ors/inith.hpp"

namespace ors {

using Clock = std::chrono::steady_clock;

namespace {

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Smallest lattice value offset + unit*k that is >= z (up to round-off).
double lattice_ceil(double z, double unit, double offset) {
  if (unit <= 0.0 || !std::isfinite(z)) return z;
  return offset + unit * std::ceil((z - offset) / unit - 1e-6);
}

bool cannot_beat(double bound, const std::optional<Rational>& incumbent, double unit) {
  if (!incumbent) return false;
  const double inc = to_double(*incumbent);
  return bound >= inc - (unit > 0.0 ? 1e-6 * unit : 1e-9);
}

// Column rows: one entry per covered grid point of every block, then the
// surgeon's convexity row.
void column_entries(const Instance& inst, const Pattern& k, std::vector<int>& rows, std::vector<double>& vals) {
  rows.clear();
  vals.clear();
  for (int b : k.blocks) {
    for (int pt : inst.covering_points(b)) {
      auto it = std::find(rows.begin(), rows.end(), pt);
      if (it == rows.end()) {
        rows.push_back(pt);
        vals.push_back(1.0);
      } else {
        vals[static_cast<std::size_t>(it - rows.begin())] += 1.0;
      }
    }
  }
  rows.push_back(inst.num_time_points() + k.surgeon);
  vals.push_back(1.0);
}

// Restricted master kept alive across nodes. Columns mirror the pool one to
// one; branching only changes column upper bounds.
struct Rmp {
  const Instance& inst;
  const CostModel& cost;
  std::unique_ptr<optkern::SimplexSolver> solver;
  std::vector<int> columns;  // pool index per LP column

  Rmp(const Instance& i, const CostModel& c) : inst(i), cost(c) {
    optkern::LinearProgram lp;
    lp.set_objective_offset(to_double(cost.constant(inst)));
    const int nt = inst.num_time_points();
    for (int pt = 0; pt < nt; ++pt) {
      optkern::Constraint r;
      r.rhs = inst.rooms();
      lp.add_constraint(std::move(r));
    }
    for (int s = 0; s < inst.num_surgeons(); ++s) {
      optkern::Constraint r;
      r.sense = optkern::RowSense::Equal;
      r.rhs = 1.0;
      lp.add_constraint(std::move(r));
    }
    solver = std::make_unique<optkern::SimplexSolver>(lp);
  }

  void add(const Pattern& k, int pool_index, bool allowed = true) {
    std::vector<int> ri;
    std::vector<double> rv;
    column_entries(inst, k, ri, rv);
    solver->add_column(0.0, allowed ? optkern::kInf : 0.0, to_double(cost.cost(inst, k)), ri, rv);
    columns.push_back(pool_index);
  }

  /// Adds missing pool columns and fixes inadmissible ones to zero.
  void restrict_to(const ColumnPool& pool, const BranchHistory& history) {
    for (std::size_t i = columns.size(); i < pool.size(); ++i) add(pool[i], static_cast<int>(i));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      // No explicit upper bound of 1: the convexity rows imply it, and a column
      // resting at that bound would leave duals that misprice the pool.
      const double ub = admissible(pool[static_cast<std::size_t>(columns[j])], history) ? optkern::kInf : 0.0;
      if (solver->upper(static_cast<int>(j)) != ub) solver->set_bounds(static_cast<int>(j), 0.0, ub);
    }
  }

  RmpSolution solve() {
    const optkern::LpSolution sol = solver->solve();
    RmpSolution out;
    out.status = sol.status;
    out.objective = sol.objective;
    out.columns = columns;
    if (sol.status != optkern::LpStatus::Optimal) return out;
    out.theta = sol.primal;
    const int nt = inst.num_time_points();
    out.lambda.assign(sol.duals.begin(), sol.duals.begin() + nt);
    out.mu.assign(sol.duals.begin() + nt, sol.duals.end());
    return out;
  }
};

CgResult generate_columns(const Instance& inst, ColumnPool& pool, const BranchHistory& history, Pricer& pricer,
                          const CgOptions& options, Rmp& rmp);

}  // namespace

int ColumnPool::add(Pattern k, bool* added) {
  auto key = std::make_pair(k.surgeon, k.blocks);
  auto it = index_.find(key);
  if (it != index_.end()) {
    if (added) *added = false;
    return it->second;
  }
  const int idx = static_cast<int>(items_.size());
  index_.emplace(std::move(key), idx);
  items_.push_back(std::move(k));
  if (added) *added = true;
  return idx;
}

bool admissible(const Pattern& k, const BranchHistory& history) {
  for (const BranchDecision& d : history) {
    if (d.surgeon != k.surgeon) continue;
    const bool has = std::binary_search(k.blocks.begin(), k.blocks.end(), d.block);
    if (has != (d.value == 1)) return false;
  }
  return true;
}

RmpSolution solve_rmp(const Instance& inst, std::span<const Pattern> pool, const BranchHistory& history,
                      const CostModel& cost) {
  ColumnPool cp;
  for (const Pattern& k : pool) cp.add(k);
  Rmp rmp(inst, cost);
  rmp.restrict_to(cp, history);
  return rmp.solve();
}

std::pair<int, int> select_branch_variable(std::span<const FractionalY> y) {
  const FractionalY* best = nullptr;
  double best_dist = 2.0;
  for (const FractionalY& e : y) {
    const double frac = e.value - std::floor(e.value);
    if (frac <= 1e-6 || frac >= 1.0 - 1e-6) continue;
    const double dist = std::abs(e.value - 0.5);
    const bool better = dist < best_dist - 1e-12 ||
                        (dist <= best_dist + 1e-12 && best &&
                         std::make_pair(e.surgeon, e.block) < std::make_pair(best->surgeon, best->block));
    if (!best || better) {
      best = &e;
      best_dist = std::min(best_dist, dist);
    }
  }
  if (!best) throw std::logic_error("select_branch_variable called on integral y");
  return {best->surgeon, best->block};
}

CgResult run_column_generation(const Instance& inst, ColumnPool& pool, const BranchHistory& history, Pricer& pricer,
                               const CgOptions& options) {
  Rmp rmp(inst, pricer.options().cost);
  rmp.restrict_to(pool, history);
  return generate_columns(inst, pool, history, pricer, options, rmp);
}

namespace {

CgResult generate_columns(const Instance& inst, ColumnPool& pool, const BranchHistory& history, Pricer& pricer,
                          const CgOptions& options, Rmp& rmp) {
  CgResult res;
  const CostModel& cost = pricer.options().cost;
  const double unit = to_double(cost.unit(inst));
  const double offset = to_double(cost.constant(inst));

  while (true) {
    if (Clock::now() > options.deadline) return res;
    auto tm = Clock::now();
    res.rmp = rmp.solve();
    res.master_seconds += elapsed(tm);
    ++res.iterations;
    if (res.rmp.status != optkern::LpStatus::Optimal) {
      throw std::logic_error(std::string("restricted master not optimal: ") + optkern::to_string(res.rmp.status));
    }
    res.lp_bound = res.rmp.objective;

    auto tp = Clock::now();
    bool all_priced = true;
    double positive_sum = 0.0;
    long added = 0;
    for (int s = 0; s < inst.num_surgeons(); ++s) {
      PricingOutcome out = pricer.price(s, res.rmp.lambda, res.rmp.mu[static_cast<std::size_t>(s)], history);
      res.callbacks += out.callbacks;
      res.cuts += out.cuts;
      positive_sum += std::max(0.0, out.reduced_cost);
      if (out.pattern) {
        bool is_new = false;
        const int idx = pool.add(*out.pattern, &is_new);
        if (is_new) {
          rmp.add(pool[static_cast<std::size_t>(idx)], idx);
          ++added;
        }
      }
      if (!options.multi_pattern && added > 0) {
        all_priced = s == inst.num_surgeons() - 1;
        break;
      }
    }
    res.pricing_seconds += elapsed(tp);
    res.columns_added += added;
    if (all_priced) res.lagrangian_bound = std::max(res.lagrangian_bound, res.lp_bound - positive_sum);

    if (added == 0) {
      res.converged = true;
      break;
    }
    if (cannot_beat(lattice_ceil(res.lagrangian_bound, unit, offset), options.cutoff, unit)) {
      res.pruned_by_bound = true;
      return res;
    }
  }

  // y_sb = Σ a θ over the surgeon's columns.
  std::map<std::pair<int, int>, double> y;
  for (std::size_t j = 0; j < res.rmp.columns.size(); ++j) {
    const double th = res.rmp.theta[j];
    if (th <= 1e-9) continue;
    const Pattern& k = pool[static_cast<std::size_t>(res.rmp.columns[j])];
    for (int b : k.blocks) y[{k.surgeon, b}] += th;
  }
  for (const auto& [sb, v] : y) res.y.push_back(FractionalY{sb.first, sb.second, v});
  return res;
}

}  // namespace

std::optional<Assignment> master_heuristic(const Instance& inst, std::span<const Pattern> pool, const CostModel& cost,
                                           std::optional<Rational> cutoff, long node_limit, double time_limit,
                                           std::optional<double> lower_bound) {
  optkern::MipProblem mip;
  auto& lp = mip.lp;
  lp.set_objective_offset(to_double(cost.constant(inst)));
  const int nt = inst.num_time_points();
  std::vector<optkern::Constraint> rows(static_cast<std::size_t>(nt + inst.num_surgeons()));
  for (int pt = 0; pt < nt; ++pt) rows[static_cast<std::size_t>(pt)].rhs = inst.rooms();
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    auto& r = rows[static_cast<std::size_t>(nt + s)];
    r.sense = optkern::RowSense::Equal;
    r.rhs = 1.0;
  }
  std::vector<int> ri;
  std::vector<double> rv;
  for (const Pattern& k : pool) {
    const int j = lp.add_variable(0.0, 1.0, to_double(cost.cost(inst, k)));
    mip.binaries.push_back(j);
    column_entries(inst, k, ri, rv);
    for (std::size_t e = 0; e < ri.size(); ++e) rows[static_cast<std::size_t>(ri[e])].add(j, rv[e]);
  }
  for (auto& r : rows) lp.add_constraint(std::move(r));

  optkern::MipOptions mo;
  mo.node_limit = node_limit;
  mo.time_limit = time_limit;
  mo.objective_granularity = to_double(cost.unit(inst));
  mo.granularity_offset = to_double(cost.constant(inst));
  if (cutoff) mo.cutoff = to_double(*cutoff);
  mo.stop_at = lower_bound;
  const optkern::MipResult r = optkern::solve_mip(mip, mo);
  if (!r.has_incumbent()) return std::nullopt;
  Assignment a(inst);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (r.incumbent[j] > 0.5) apply_pattern(pool[j], a);
  }
  return a;
}

namespace {

struct Node {
  double bound = -optkern::kInf;
  long id = 0;
  BranchHistory history;
  std::optional<BranchDecision> branch;
  std::shared_ptr<const optkern::Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

Rational assignment_value(const Instance& inst, const CostModel& cost, const Assignment& a) {
  Rational v = cost.constant(inst);
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    Pattern k;
    k.surgeon = s;
    k.f = follower_objective(inst, s, a);
    std::int64_t scheduled_prio = 0;
    for (int p : inst.patients_of(s)) {
      const auto times = static_cast<std::int64_t>(a.blocks_of_patient(p).size());
      k.delta += inst.patient(p).duration * times;
      scheduled_prio += inst.patient(p).prio_leader * times;
      k.rho += inst.patient(p).prio_leader;
    }
    k.rho -= scheduled_prio;
    v += cost.cost(inst, k);
  }
  return v;
}

bool fixed_blocks_fit_rooms(const Instance& inst, const BranchHistory& history) {
  std::vector<int> use(static_cast<std::size_t>(inst.num_time_points()), 0);
  for (const BranchDecision& d : history) {
    if (d.value != 1) continue;
    for (int pt : inst.covering_points(d.block)) {
      if (++use[static_cast<std::size_t>(pt)] > inst.rooms()) return false;
    }
  }
  return true;
}

}  // namespace

BnpResult solve_bnp(const Instance& inst, const BnpOptions& options) {
  const auto t0 = Clock::now();
  const auto deadline = options.time_limit >= 1e9
                            ? Clock::time_point::max()
                            : t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit));

  BnpResult result;
  result.assignment = Assignment(inst);
  result.cuts = std::make_shared<CutStore>(inst.num_surgeons());
  SolveStats& st = result.stats;

  PricingOptions po;
  po.cost = CostModel::make(inst, options.rule, options.tiebreak);
  po.cut_kind = options.cut_kind;
  po.use_lcr = options.use_lcr;
  po.engine = options.pricing;
  po.on_cut = options.on_cut;
  Pricer pricer(inst, po, result.cuts);
  const CostModel& cost = pricer.options().cost;
  const double unit = to_double(cost.unit(inst));
  const double offset = to_double(cost.constant(inst));

  ColumnPool pool;
  std::optional<Rational> best;
  auto offer = [&](const Assignment& a) {
    const Rational v = assignment_value(inst, cost, a);
    if (best && v >= *best) return;
    best = v;
    result.assignment = a;
    if (options.on_incumbent) options.on_incumbent(a, leader_objective(inst, a));
  };

  if (options.use_initial_heuristic && options.rule == ColumnRule::Bilevel) {
    const HeuristicResult h = initial_heuristic(inst, options.cut_kind);
    for (const Pattern& k : h.patterns) pool.add(k);
    if (options.use_lcr) {
      for (const LazyCut& c : h.cuts) result.cuts->record(c);
    }
    offer(h.assignment);
    result.incumbent_before_root = true;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-optkern::kInf, next_id++, {}, std::nullopt, nullptr});
  Rmp rmp(inst, cost);
  bool timed_out = false;
  std::size_t pool_at_last_heuristic = 0;

  while (!open.empty()) {
    if (Clock::now() > deadline) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (cannot_beat(node.bound, best, unit)) continue;
    ++st.n_nodes;

    bool feasible = fixed_blocks_fit_rooms(inst, node.history);
    for (int s = 0; s < inst.num_surgeons() && feasible; ++s) {
      auto k = pricer.default_pattern(s, node.history);
      if (!k) feasible = false;
      else pool.add(std::move(*k));
    }
    if (!feasible) continue;

    CgOptions co;
    co.multi_pattern = options.multi_pattern;
    co.deadline = deadline;
    co.cutoff = best;
    rmp.restrict_to(pool, node.history);
    if (node.basis) rmp.solver->set_basis(*node.basis);
    const CgResult cg = generate_columns(inst, pool, node.history, pricer, co, rmp);
    st.n_cgi += cg.iterations;
    st.n_lcs += cg.cuts;
    st.n_cbs += cg.callbacks;
    st.t_sp += cg.pricing_seconds;
    st.t_mp += cg.master_seconds;
    const bool is_root = node.id == 0;
    if (is_root && cg.converged) {
      result.root_bound = cg.lp_bound;
      result.root_converged = true;
    }
    if (!cg.converged && !cg.pruned_by_bound) {
      node.bound = std::max(node.bound, lattice_ceil(cg.lagrangian_bound, unit, offset));
      open.push(node);
      timed_out = true;
      break;
    }
    if (cg.pruned_by_bound) continue;

    const double node_bound = std::max(node.bound, lattice_ceil(cg.lp_bound, unit, offset));
    if (options.on_node) {
      options.on_node(NodeTrace{node.id, node_bound, node.branch, static_cast<long>(pool.size())});
    }

    bool integral = true;
    for (const FractionalY& e : cg.y) {
      const double frac = e.value - std::floor(e.value);
      if (frac > 1e-6 && frac < 1.0 - 1e-6) {
        integral = false;
        break;
      }
    }
    if (integral) {
      // Integral y pins one column per surgeon.
      std::vector<int> pick(static_cast<std::size_t>(inst.num_surgeons()), -1);
      std::vector<double> weight(static_cast<std::size_t>(inst.num_surgeons()), -1.0);
      for (std::size_t j = 0; j < cg.rmp.columns.size(); ++j) {
        const Pattern& k = pool[static_cast<std::size_t>(cg.rmp.columns[j])];
        if (cg.rmp.theta[j] > weight[static_cast<std::size_t>(k.surgeon)]) {
          weight[static_cast<std::size_t>(k.surgeon)] = cg.rmp.theta[j];
          pick[static_cast<std::size_t>(k.surgeon)] = cg.rmp.columns[j];
        }
      }
      Assignment a(inst);
      for (int idx : pick) {
        if (idx >= 0) apply_pattern(pool[static_cast<std::size_t>(idx)], a);
      }
      if (check_single_level_feasibility(inst, a).ok) {
        offer(a);
        continue;
      }
      // Numerically integral but inconsistent: fall through to the heuristic and branching.
      integral = false;
    }

    if (cannot_beat(node_bound, best, unit)) continue;
    if (pool.size() != pool_at_last_heuristic) {
      pool_at_last_heuristic = pool.size();
      const double remaining = std::chrono::duration<double>(deadline - Clock::now()).count();
      const double global_bound = open.empty() ? node_bound : std::min(node_bound, open.top().bound);
      auto tm = Clock::now();
      auto h = master_heuristic(inst, pool.items(), cost, best, options.heuristic_node_limit,
                                std::max(0.0, std::min(10.0, remaining)), global_bound);
      st.t_mp += elapsed(tm);
      if (h) offer(*h);
    }
    if (cannot_beat(node_bound, best, unit)) continue;

    std::pair<int, int> sb;
    try {
      sb = select_branch_variable(cg.y);
    } catch (const std::logic_error&) {
      continue;
    }
    auto basis = std::make_shared<const optkern::Basis>(rmp.solver->basis());
    for (int v : {1, 0}) {
      Node child;
      child.basis = basis;
      child.bound = node_bound;
      child.id = next_id++;
      child.history = node.history;
      child.history.push_back(BranchDecision{sb.first, sb.second, v});
      child.branch = child.history.back();
      open.push(std::move(child));
    }
  }

  st.n_cols = static_cast<long>(pool.size());
  st.F_lpr = result.root_bound;
  if (best) {
    st.feasible_found = true;
    st.F = leader_objective(inst, result.assignment);
    result.objective = *best;
  }
  if (timed_out) {
    st.status = SolveStatus::TimeLimit;
    double lb = open.empty() ? optkern::kInf : open.top().bound;
    if (best) lb = std::min(lb, to_double(*best));
    st.bound = lb;
  } else if (best) {
    st.status = SolveStatus::Optimal;
    st.bound = to_double(*best);
  } else {
    st.status = SolveStatus::Infeasible;
  }
  result.pool = pool.items();
  st.t_total = elapsed(t0);
  st.finish_gap();
  return result;
}

}  // namespace ors
