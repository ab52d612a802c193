#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "ors/optkern.hpp"

namespace ors::optkern {

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "OPTIMAL";
    case MipStatus::Infeasible: return "INFEASIBLE";
    case MipStatus::TimeLimit: return "TIME_LIMIT";
    case MipStatus::NodeLimit: return "NODE_LIMIT";
    case MipStatus::Unbounded: return "UNBOUNDED";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Node {
  double bound = -kInf;  // internal (minimisation) sense
  long id = 0;
  std::vector<std::pair<int, double>> fixings;  // binary index, value
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool rows_satisfied(const std::vector<Constraint>& rows, std::span<const double> x, double tol) {
  for (const Constraint& r : rows) {
    if (r.violation(x) > tol) return false;
  }
  return true;
}

}  // namespace

MipResult solve_mip(const MipProblem& problem, const MipOptions& options) {
  const auto t0 = Clock::now();
  const LinearProgram& lp = problem.lp;
  const double sgn = lp.sense() == Sense::Maximize ? -1.0 : 1.0;
  MipResult result;

  for (int j : problem.binaries) {
    if (j < 0 || j >= lp.num_variables()) throw std::invalid_argument("binary index out of range");
  }
  std::vector<double> base_lo(problem.binaries.size());
  std::vector<double> base_up(problem.binaries.size());
  for (std::size_t k = 0; k < problem.binaries.size(); ++k) {
    const Variable& v = lp.variable(problem.binaries[k]);
    base_lo[k] = std::max(0.0, v.lower);
    base_up[k] = std::min(1.0, v.upper);
  }

  SimplexSolver solver(lp, options.simplex);
  std::vector<Constraint> rows = lp.constraints();  // original rows plus lazy cuts

  // Incumbent value in internal sense; a cutoff acts as a phantom incumbent.
  double incumbent = options.cutoff ? sgn * *options.cutoff : kInf;
  const double g = options.objective_granularity;
  auto round_bound = [&](double z) {
    if (g <= 0.0 || !std::isfinite(z)) return z;
    const double off = sgn * options.granularity_offset;
    return off + g * std::ceil((z - off) / g - 1e-6);
  };
  auto cannot_improve = [&](double bound) {
    if (!std::isfinite(incumbent)) return false;
    if (g > 0.0) return bound >= incumbent - 1e-6 * g;
    return bound >= incumbent - options.gap_tol;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInf, next_id++, {}, nullptr});
  bool incomplete = false;
  bool limit_hit = false;
  bool target_reached = false;
  MipStatus limit_status = MipStatus::TimeLimit;
  double reported_bound = -kInf;

  auto record_trace = [&](double open_min) {
    double b = std::min(open_min, incumbent);
    reported_bound = std::max(reported_bound, b);
    result.stats.trace.push_back(MipTracePoint{sgn * reported_bound, sgn * incumbent});
  };

  while (!open.empty() && !target_reached) {
    if (seconds_since(t0) > options.time_limit) {
      limit_hit = true;
      limit_status = MipStatus::TimeLimit;
      break;
    }
    if (result.stats.nodes >= options.node_limit) {
      limit_hit = true;
      limit_status = MipStatus::NodeLimit;
      break;
    }
    Node node = open.top();
    open.pop();
    if (cannot_improve(node.bound)) continue;
    ++result.stats.nodes;

    for (std::size_t k = 0; k < problem.binaries.size(); ++k) solver.set_bounds(problem.binaries[k], base_lo[k], base_up[k]);
    for (const auto& [k, v] : node.fixings) solver.set_bounds(problem.binaries[static_cast<std::size_t>(k)], v, v);
    if (node.basis) solver.set_basis(*node.basis);

    while (true) {
      const LpSolution sol = solver.solve();
      result.stats.lp_iterations += sol.iterations;
      if (sol.status == LpStatus::Unbounded) {
        if (result.stats.nodes == 1) {
          result.status = MipStatus::Unbounded;
          result.stats.seconds = seconds_since(t0);
          return result;
        }
        incomplete = true;
        break;
      }
      if (sol.status == LpStatus::IterationLimit) {
        incomplete = true;
        break;
      }
      if (sol.status == LpStatus::Infeasible) break;

      const double z = sgn * sol.objective;
      if (!result.stats.root_lp_solved) {
        result.stats.root_lp_solved = true;
        result.stats.root_lp_bound = sol.objective;
      }
      const double bound = round_bound(z);
      if (cannot_improve(bound)) break;

      int branch = -1;
      double best_frac = 2.0;
      for (std::size_t k = 0; k < problem.binaries.size(); ++k) {
        const double v = sol.primal[static_cast<std::size_t>(problem.binaries[k])];
        const double frac = v - std::floor(v);
        if (frac <= options.integrality_tol || frac >= 1.0 - options.integrality_tol) continue;
        const double dist = std::abs(frac - 0.5);
        if (dist < best_frac) {
          best_frac = dist;
          branch = static_cast<int>(k);
        }
      }

      if (branch >= 0) {
        auto basis = std::make_shared<const Basis>(solver.basis());
        Node up{bound, next_id++, node.fixings, basis};
        up.fixings.emplace_back(branch, 1.0);
        Node down{bound, next_id++, node.fixings, basis};
        down.fixings.emplace_back(branch, 0.0);
        open.push(std::move(up));
        open.push(std::move(down));
        break;
      }

      std::vector<double> cand = sol.primal;
      for (int j : problem.binaries) {
        auto& v = cand[static_cast<std::size_t>(j)];
        v = std::round(v);
      }
      if (!rows_satisfied(rows, cand, 1e-6)) {
        incomplete = true;
        break;
      }
      if (problem.callback) {
        const auto tc = Clock::now();
        std::vector<Constraint> cuts = problem.callback(cand);
        result.stats.callback_seconds += seconds_since(tc);
        ++result.stats.callbacks;
        if (!cuts.empty()) {
          for (Constraint& c : cuts) {
            if (c.violation(cand) <= 1e-9) throw std::logic_error("lazy cut is not violated by its candidate");
            solver.add_row(c);
            rows.push_back(std::move(c));
            ++result.stats.lazy_cuts;
          }
          continue;
        }
      }
      const double value = sgn * lp.objective_value(cand);
      if (value < incumbent) {
        incumbent = value;
        result.incumbent = cand;
        result.objective = lp.objective_value(cand);
        if (options.on_incumbent) options.on_incumbent(result.incumbent, result.objective);
        if (options.stop_at && incumbent <= sgn * *options.stop_at + 1e-9) target_reached = true;
      }
      break;
    }
    record_trace(open.empty() ? kInf : open.top().bound);
  }

  result.stats.seconds = seconds_since(t0);
  double open_min = kInf;
  if (!open.empty()) open_min = open.top().bound;
  const double final_bound = std::max(reported_bound, std::min(open_min, incumbent));

  if (target_reached && !open.empty()) {
    result.status = MipStatus::NodeLimit;
    result.bound = sgn * final_bound;
    return result;
  }
  if (limit_hit) {
    result.status = limit_status;
    result.bound = sgn * final_bound;
    if (!std::isfinite(result.bound) && result.has_incumbent()) result.bound = result.objective;
    return result;
  }
  if (incomplete) {
    // A node could not be resolved numerically; the search is not a proof.
    result.status = MipStatus::NodeLimit;
    result.bound = sgn * final_bound;
    return result;
  }
  if (result.has_incumbent()) {
    result.status = MipStatus::Optimal;
    result.bound = result.objective;
  } else {
    result.status = MipStatus::Infeasible;
    result.bound = sgn * (options.cutoff ? sgn * *options.cutoff : kInf);
  }
  return result;
}

}  // namespace ors::optkern
