#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "ors/optkern.hpp"

namespace ors::optkern {

double Constraint::activity(std::span<const double> x) const {
  long double a = 0.0L;
  for (std::size_t k = 0; k < index.size(); ++k) a += static_cast<long double>(value[k]) * x[static_cast<std::size_t>(index[k])];
  return static_cast<double>(a);
}

double Constraint::violation(std::span<const double> x) const {
  const double a = activity(x);
  switch (sense) {
    case RowSense::LessEqual: return std::max(0.0, a - rhs);
    case RowSense::GreaterEqual: return std::max(0.0, rhs - a);
    case RowSense::Equal: return std::abs(a - rhs);
  }
  return 0.0;
}

int LinearProgram::add_variable(double lower, double upper, double cost, std::string name) {
  if (lower > upper) throw std::invalid_argument("variable lower bound exceeds upper bound");
  vars_.push_back(Variable{lower, upper, cost, std::move(name)});
  return static_cast<int>(vars_.size()) - 1;
}

int LinearProgram::add_constraint(Constraint row) {
  if (row.index.size() != row.value.size()) throw std::invalid_argument("constraint index/value size mismatch");
  for (int j : row.index) {
    if (j < 0 || j >= num_variables()) throw std::invalid_argument("constraint references an undeclared variable");
  }
  rows_.push_back(std::move(row));
  return static_cast<int>(rows_.size()) - 1;
}

void LinearProgram::set_bounds(int j, double lower, double upper) {
  auto& v = vars_.at(static_cast<std::size_t>(j));
  v.lower = lower;
  v.upper = upper;
}

double LinearProgram::objective_value(std::span<const double> x) const {
  long double z = offset_;
  for (std::size_t j = 0; j < vars_.size(); ++j) z += static_cast<long double>(vars_[j].cost) * x[j];
  return static_cast<double>(z);
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "OPTIMAL";
    case LpStatus::Infeasible: return "INFEASIBLE";
    case LpStatus::Unbounded: return "UNBOUNDED";
    case LpStatus::IterationLimit: return "ITERATION_LIMIT";
  }
  return "?";
}

namespace {
constexpr double kArtificialBox = 1e7;
}

// Computational form: every row i becomes a_i x - s_i = 0 with the row's
// bounds moved onto its slack s_i. All internal variables (structural and
// slack) share one index space; structural j maps to internal index
// structural_[j], row i's slack to slack_[i].
struct SimplexSolver::Impl {
  SimplexOptions opt;
  bool maximize = false;
  double offset = 0.0;

  int m = 0;
  std::vector<std::vector<int>> col_idx;
  std::vector<std::vector<double>> col_val;
  std::vector<double> lo, up, orig_lo, orig_up, cost, x;
  std::vector<char> artificial;
  std::vector<int> pos;  // row position when basic, -1 otherwise
  std::vector<int> head;
  std::vector<int> structural;
  std::vector<int> slack;

  Eigen::MatrixXd binv;
  bool factor_valid = false;
  bool xb_dirty = true;
  int pivots_since_refactor = 0;
  long iterations = 0;
  long iteration_cap = 0;  // per solve() call
  std::vector<double> clean_cost;  // non-empty while costs are perturbed

  int total() const { return static_cast<int>(lo.size()); }

  int new_var(double l, double u, double c) {
    col_idx.emplace_back();
    col_val.emplace_back();
    lo.push_back(l);
    up.push_back(u);
    orig_lo.push_back(l);
    orig_up.push_back(u);
    cost.push_back(c);
    x.push_back(0.0);
    artificial.push_back(0);
    pos.push_back(-1);
    const int j = total() - 1;
    x[static_cast<std::size_t>(j)] = resting_value(j);
    return j;
  }

  double resting_value(int j) const {
    const auto k = static_cast<std::size_t>(j);
    if (std::isfinite(lo[k])) return lo[k];
    if (std::isfinite(up[k])) return up[k];
    return 0.0;
  }

  static void row_bounds(const Constraint& row, double& l, double& u) {
    switch (row.sense) {
      case RowSense::LessEqual: l = -kInf; u = row.rhs; break;
      case RowSense::GreaterEqual: l = row.rhs; u = kInf; break;
      case RowSense::Equal: l = row.rhs; u = row.rhs; break;
    }
  }

  int append_row(const Constraint& row) {
    double l = 0.0;
    double u = 0.0;
    row_bounds(row, l, u);
    const int r = m++;
    for (std::size_t k = 0; k < row.index.size(); ++k) {
      if (row.value[k] == 0.0) continue;
      const int j = structural.at(static_cast<std::size_t>(row.index[k]));
      col_idx[static_cast<std::size_t>(j)].push_back(r);
      col_val[static_cast<std::size_t>(j)].push_back(row.value[k]);
    }
    const int s = new_var(l, u, 0.0);
    col_idx[static_cast<std::size_t>(s)].push_back(r);
    col_val[static_cast<std::size_t>(s)].push_back(-1.0);
    slack.push_back(s);
    // The new slack enters the basis; extend B^-1 = [[Binv, 0], [r_B Binv, -1]].
    head.push_back(s);
    pos[static_cast<std::size_t>(s)] = r;
    if (factor_valid) {
      Eigen::RowVectorXd rb = Eigen::RowVectorXd::Zero(r);
      for (std::size_t k = 0; k < row.index.size(); ++k) {
        const int j = structural[static_cast<std::size_t>(row.index[k])];
        const int p = pos[static_cast<std::size_t>(j)];
        if (p >= 0 && p < r) rb(p) += row.value[k];
      }
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(r + 1, r + 1);
      if (r > 0) {
        next.topLeftCorner(r, r) = binv;
        next.block(r, 0, 1, r) = rb * binv;
      }
      next(r, r) = -1.0;
      binv = std::move(next);
    }
    xb_dirty = true;
    return r;
  }

  void slack_basis() {
    head.assign(static_cast<std::size_t>(m), -1);
    std::fill(pos.begin(), pos.end(), -1);
    for (int i = 0; i < m; ++i) {
      const int s = slack[static_cast<std::size_t>(i)];
      head[static_cast<std::size_t>(i)] = s;
      pos[static_cast<std::size_t>(s)] = i;
    }
    for (int j = 0; j < total(); ++j) {
      if (pos[static_cast<std::size_t>(j)] < 0) x[static_cast<std::size_t>(j)] = resting_value(j);
    }
    binv = -Eigen::MatrixXd::Identity(m, m);
    factor_valid = true;
    pivots_since_refactor = 0;
    xb_dirty = true;
  }

  void refactor() {
    if (m == 0) {
      binv.resize(0, 0);
      factor_valid = true;
      pivots_since_refactor = 0;
      return;
    }
    Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const auto j = static_cast<std::size_t>(head[static_cast<std::size_t>(i)]);
      for (std::size_t k = 0; k < col_idx[j].size(); ++k) bmat(col_idx[j][k], i) = col_val[j][k];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bmat);
    if (!lu.isInvertible()) {
      slack_basis();
      return;
    }
    binv = lu.inverse();
    factor_valid = true;
    pivots_since_refactor = 0;
    xb_dirty = true;
  }

  void compute_xb() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < total(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (pos[k] >= 0 || x[k] == 0.0) continue;
      for (std::size_t e = 0; e < col_idx[k].size(); ++e) rhs(col_idx[k][e]) -= col_val[k][e] * x[k];
    }
    const Eigen::VectorXd xb = binv * rhs;
    for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(head[static_cast<std::size_t>(i)])] = xb(i);
    xb_dirty = false;
  }

  Eigen::VectorXd duals() const {
    Eigen::RowVectorXd cb(m);
    for (int i = 0; i < m; ++i) cb(i) = cost[static_cast<std::size_t>(head[static_cast<std::size_t>(i)])];
    return (cb * binv).transpose();
  }

  double dot_col(const Eigen::VectorXd& v, int j) const {
    const auto k = static_cast<std::size_t>(j);
    double s = 0.0;
    for (std::size_t e = 0; e < col_idx[k].size(); ++e) s += v(col_idx[k][e]) * col_val[k][e];
    return s;
  }

  double reduced_cost(const Eigen::VectorXd& y, int j) const { return cost[static_cast<std::size_t>(j)] - dot_col(y, j); }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
    const auto k = static_cast<std::size_t>(j);
    for (std::size_t e = 0; e < col_idx[k].size(); ++e) a += binv.col(col_idx[k][e]) * col_val[k][e];
    return a;
  }

  void pivot(int r, int q, const Eigen::VectorXd& alpha) {
    const int leaving = head[static_cast<std::size_t>(r)];
    pos[static_cast<std::size_t>(leaving)] = -1;
    head[static_cast<std::size_t>(r)] = q;
    pos[static_cast<std::size_t>(q)] = r;
    const double piv = alpha(r);
    binv.row(r) /= piv;
    Eigen::VectorXd a = alpha;
    a(r) = 0.0;
    const Eigen::RowVectorXd rr = binv.row(r);
    binv.noalias() -= a * rr;
    ++pivots_since_refactor;
  }

  bool fixed(int j) const { return lo[static_cast<std::size_t>(j)] == up[static_cast<std::size_t>(j)]; }

  double infeasibility(int j) const {
    const auto k = static_cast<std::size_t>(j);
    if (x[k] < lo[k] - opt.feasibility_tol) return lo[k] - x[k];
    if (x[k] > up[k] + opt.feasibility_tol) return x[k] - up[k];
    return 0.0;
  }

  bool primal_feasible() const {
    for (int i = 0; i < m; ++i) {
      if (infeasibility(head[static_cast<std::size_t>(i)]) > 0.0) return false;
    }
    return true;
  }

  void maybe_refactor() {
    if (!factor_valid || pivots_since_refactor >= opt.refactor_interval) {
      refactor();
      compute_xb();
    } else if (xb_dirty) {
      compute_xb();
    }
  }

  // Moves nonbasic variables whose reduced cost has the wrong sign to the
  // opposite bound, boxing unbounded ones artificially.
  void make_dual_feasible() {
    const Eigen::VectorXd y = duals();
    bool moved = false;
    for (int j = 0; j < total(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (pos[k] >= 0 || fixed(j)) continue;
      const double d = reduced_cost(y, j);
      const bool at_lower = x[k] == lo[k];
      const bool at_upper = x[k] == up[k];
      if (d < -opt.optimality_tol && !at_upper) {
        if (!std::isfinite(up[k])) {
          up[k] = std::max(x[k], std::isfinite(lo[k]) ? lo[k] : 0.0) + kArtificialBox;
          artificial[k] = 1;
        }
        x[k] = up[k];
        moved = true;
      } else if (d > opt.optimality_tol && !at_lower) {
        if (!std::isfinite(lo[k])) {
          lo[k] = std::min(x[k], std::isfinite(up[k]) ? up[k] : 0.0) - kArtificialBox;
          artificial[k] = 1;
        }
        x[k] = lo[k];
        moved = true;
      }
    }
    if (moved) compute_xb();
  }

  // Restores original bounds; returns true when an artificial bound was
  // active so another primal pass is needed.
  bool drop_artificial_boxes() {
    bool active = false;
    for (int j = 0; j < total(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (!artificial[k]) continue;
      if (std::abs(x[k] - lo[k]) < 1e-6 * kArtificialBox && !std::isfinite(orig_lo[k])) active = true;
      if (std::abs(x[k] - up[k]) < 1e-6 * kArtificialBox && !std::isfinite(orig_up[k])) active = true;
      lo[k] = orig_lo[k];
      up[k] = orig_up[k];
      artificial[k] = 0;
    }
    return active;
  }

  enum class Phase { Optimal, Unbounded, Infeasible, Limit };

  Phase primal_simplex() {
    int degenerate = 0;
    while (true) {
      if (iterations >= iteration_cap) return Phase::Limit;
      maybe_refactor();
      const bool bland = degenerate > opt.degenerate_switch;
      const Eigen::VectorXd y = duals();

      int q = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < total(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        if (pos[k] >= 0 || fixed(j)) continue;
        const double d = reduced_cost(y, j);
        int cand_dir = 0;
        if (d < -opt.optimality_tol && x[k] < up[k]) cand_dir = +1;
        else if (d > opt.optimality_tol && x[k] > lo[k]) cand_dir = -1;
        if (cand_dir == 0) continue;
        if (bland) {
          q = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
          dir = cand_dir;
        }
      }
      if (q < 0) return Phase::Optimal;

      const Eigen::VectorXd alpha = ftran(q);
      double t_min = kInf;
      int r = -1;
      bool to_lower = false;
      double best_piv = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = alpha(i);
        if (std::abs(a) <= opt.pivot_tol) continue;
        const auto bi = static_cast<std::size_t>(head[static_cast<std::size_t>(i)]);
        const double delta = -dir * a;  // change of x_B(i) per unit step
        double t = kInf;
        bool lower_hit = false;
        if (delta < 0.0 && std::isfinite(lo[bi])) {
          t = std::max(0.0, (x[bi] - lo[bi]) / -delta);
          lower_hit = true;
        } else if (delta > 0.0 && std::isfinite(up[bi])) {
          t = std::max(0.0, (up[bi] - x[bi]) / delta);
        }
        if (!std::isfinite(t)) continue;
        const bool better = t < t_min - 1e-12 ||
                            (t <= t_min + 1e-12 &&
                             (bland ? head[static_cast<std::size_t>(i)] < (r >= 0 ? head[static_cast<std::size_t>(r)] : INT32_MAX)
                                    : std::abs(a) > best_piv));
        if (better) {
          r = i;
          to_lower = lower_hit;
          best_piv = std::abs(a);
          t_min = t;
        }
      }
      const auto kq = static_cast<std::size_t>(q);
      const double t_flip = (std::isfinite(lo[kq]) && std::isfinite(up[kq])) ? up[kq] - lo[kq] : kInf;
      if (!std::isfinite(t_min) && !std::isfinite(t_flip)) return Phase::Unbounded;

      ++iterations;
      if (t_flip <= t_min) {
        x[kq] = dir > 0 ? up[kq] : lo[kq];
        for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(head[static_cast<std::size_t>(i)])] -= dir * alpha(i) * t_flip;
        degenerate = t_flip <= 1e-12 ? degenerate + 1 : 0;
        continue;
      }
      x[kq] += dir * t_min;
      for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(head[static_cast<std::size_t>(i)])] -= dir * alpha(i) * t_min;
      const auto leaving = static_cast<std::size_t>(head[static_cast<std::size_t>(r)]);
      x[leaving] = to_lower ? lo[leaving] : up[leaving];
      pivot(r, q, alpha);
      degenerate = t_min <= 1e-12 ? degenerate + 1 : 0;
    }
  }

  // Breaks dual degeneracy by nudging costs away from zero reduced cost in
  // the direction that keeps the basis dual feasible.
  void perturb_costs() {
    clean_cost = cost;
    const Eigen::VectorXd y = duals();
    for (int j = 0; j < total(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (pos[k] >= 0 || fixed(j)) continue;
      const double h = static_cast<double>((static_cast<std::uint64_t>(j) * 2654435761ULL) % 1000) / 1000.0;
      const double eps = (1e-7 + 1e-7 * std::abs(cost[k])) * (1.0 + h);
      const double d = reduced_cost(y, j);
      if (x[k] == lo[k] && d >= -opt.optimality_tol) cost[k] += eps;
      else if (x[k] == up[k] && d <= opt.optimality_tol) cost[k] -= eps;
    }
  }

  bool restore_costs() {
    if (clean_cost.empty()) return false;
    cost.swap(clean_cost);
    clean_cost.clear();
    return true;
  }

  Phase dual_simplex() {
    int stalled = 0;
    double last_obj = -kInf;
    while (true) {
      if (iterations >= iteration_cap) return Phase::Limit;
      maybe_refactor();
      if (stalled > 4 * opt.degenerate_switch && clean_cost.empty()) {
        perturb_costs();
        stalled = 0;
        last_obj = -kInf;
      }
      const bool bland = stalled > opt.degenerate_switch;

      int r = -1;
      double worst = 0.0;
      for (int i = 0; i < m; ++i) {
        const double inf = infeasibility(head[static_cast<std::size_t>(i)]);
        if (inf <= 0.0) continue;
        if (bland) {
          if (r < 0 || head[static_cast<std::size_t>(i)] < head[static_cast<std::size_t>(r)]) r = i;
        } else if (inf > worst) {
          worst = inf;
          r = i;
        }
      }
      if (r < 0) return Phase::Optimal;

      const auto br = static_cast<std::size_t>(head[static_cast<std::size_t>(r)]);
      const bool below = x[br] < lo[br];
      const double target = below ? lo[br] : up[br];
      const Eigen::VectorXd y = duals();
      const Eigen::VectorXd rho = binv.row(r).transpose();

      int q = -1;
      double best_ratio = kInf;
      double best_piv = 0.0;
      for (int j = 0; j < total(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        if (pos[k] >= 0 || fixed(j)) continue;
        const double a = dot_col(rho, j);
        if (std::abs(a) <= opt.pivot_tol) continue;
        const bool can_inc = x[k] < up[k];
        const bool can_dec = x[k] > lo[k];
        // Moving x_j by dx changes x_B(r) by -a*dx.
        const bool inc_ok = can_inc && (below ? a < 0.0 : a > 0.0);
        const bool dec_ok = can_dec && (below ? a > 0.0 : a < 0.0);
        if (!inc_ok && !dec_ok) continue;
        const double d = reduced_cost(y, j);
        double num = 0.0;
        if (inc_ok && dec_ok) num = std::abs(d);
        else if (inc_ok) num = std::max(0.0, d);
        else num = std::max(0.0, -d);
        const double ratio = num / std::abs(a);
        const bool better = ratio < best_ratio - 1e-12 ||
                            (ratio <= best_ratio + 1e-12 && (bland ? (q < 0 || j < q) : std::abs(a) > best_piv));
        if (better) {
          best_ratio = ratio;
          best_piv = std::abs(a);
          q = j;
        }
      }
      if (q < 0) return Phase::Infeasible;

      const Eigen::VectorXd alpha = ftran(q);
      if (std::abs(alpha(r)) <= opt.pivot_tol) {
        // Stale factorization; refresh and retry.
        ++iterations;
        refactor();
        compute_xb();
        continue;
      }
      ++iterations;
      const double dxq = (x[br] - target) / alpha(r);
      x[static_cast<std::size_t>(q)] += dxq;
      for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(head[static_cast<std::size_t>(i)])] -= alpha(i) * dxq;
      x[br] = target;
      pivot(r, q, alpha);

      double obj = 0.0;
      for (int j = 0; j < total(); ++j) obj += cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      stalled = obj <= last_obj + 1e-12 ? stalled + 1 : 0;
      last_obj = std::max(last_obj, obj);
    }
  }

  LpSolution run() {
    LpSolution sol;
    const long start_iterations = iterations;
    iteration_cap = iterations + opt.iteration_limit;
    if (!factor_valid) refactor();
    compute_xb();

    LpStatus status = LpStatus::IterationLimit;
    for (int round = 0; round < 50; ++round) {
      maybe_refactor();
      if (primal_feasible()) {
        const Phase ph = primal_simplex();
        if (ph == Phase::Limit) break;
        if (ph == Phase::Unbounded) {
          drop_artificial_boxes();
          status = LpStatus::Unbounded;
          break;
        }
        refactor();
        compute_xb();
        if (!primal_feasible()) continue;
        if (drop_artificial_boxes()) continue;
        // Confirm optimality after the fresh factorization.
        const Eigen::VectorXd y = duals();
        bool optimal = true;
        for (int j = 0; j < total() && optimal; ++j) {
          const auto k = static_cast<std::size_t>(j);
          if (pos[k] >= 0 || fixed(j)) continue;
          const double d = reduced_cost(y, j);
          if ((d < -opt.optimality_tol && x[k] < up[k]) || (d > opt.optimality_tol && x[k] > lo[k])) optimal = false;
        }
        if (!optimal) continue;
        status = LpStatus::Optimal;
        break;
      }
      make_dual_feasible();
      const Phase ph = dual_simplex();
      // Perturbed costs only steer the dual phase; primal cleans up.
      restore_costs();
      if (ph == Phase::Limit) break;
      if (ph == Phase::Infeasible) {
        drop_artificial_boxes();
        status = LpStatus::Infeasible;
        break;
      }
    }
    restore_costs();

    sol.status = status;
    sol.iterations = iterations - start_iterations;
    const int n = static_cast<int>(structural.size());
    sol.primal.resize(static_cast<std::size_t>(n));
    sol.reduced_costs.resize(static_cast<std::size_t>(n));
    sol.duals.resize(static_cast<std::size_t>(m));
    const double sign = maximize ? -1.0 : 1.0;
    const Eigen::VectorXd y = m > 0 ? duals() : Eigen::VectorXd();
    long double z = 0.0L;
    for (int j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(structural[static_cast<std::size_t>(j)]);
      sol.primal[static_cast<std::size_t>(j)] = x[k];
      sol.reduced_costs[static_cast<std::size_t>(j)] = sign * (m > 0 ? reduced_cost(y, static_cast<int>(k)) : cost[k]);
      z += static_cast<long double>(cost[k]) * x[k];
    }
    for (int i = 0; i < m; ++i) sol.duals[static_cast<std::size_t>(i)] = sign * y(i);
    sol.objective = sign * static_cast<double>(z) + offset;
    return sol;
  }
};

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions opts) : impl_(std::make_unique<Impl>()) {
  impl_->opt = opts;
  impl_->maximize = lp.sense() == Sense::Maximize;
  impl_->offset = lp.objective_offset();
  const double sign = impl_->maximize ? -1.0 : 1.0;
  for (const Variable& v : lp.variables()) {
    const int j = impl_->new_var(v.lower, v.upper, sign * v.cost);
    impl_->structural.push_back(j);
  }
  for (const Constraint& row : lp.constraints()) {
    double l = 0.0;
    double u = 0.0;
    Impl::row_bounds(row, l, u);
    const int r = impl_->m++;
    for (std::size_t k = 0; k < row.index.size(); ++k) {
      if (row.value[k] == 0.0) continue;
      const auto j = static_cast<std::size_t>(impl_->structural[static_cast<std::size_t>(row.index[k])]);
      impl_->col_idx[j].push_back(r);
      impl_->col_val[j].push_back(row.value[k]);
    }
    const int s = impl_->new_var(l, u, 0.0);
    impl_->col_idx[static_cast<std::size_t>(s)].push_back(r);
    impl_->col_val[static_cast<std::size_t>(s)].push_back(-1.0);
    impl_->slack.push_back(s);
  }
  impl_->slack_basis();
}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

int SimplexSolver::add_column(double lower, double upper, double cost, std::span<const int> rows,
                              std::span<const double> values) {
  if (lower > upper) throw std::invalid_argument("column lower bound exceeds upper bound");
  const double sign = impl_->maximize ? -1.0 : 1.0;
  const int j = impl_->new_var(lower, upper, sign * cost);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (values[k] == 0.0) continue;
    if (rows[k] < 0 || rows[k] >= impl_->m) throw std::invalid_argument("column references unknown row");
    impl_->col_idx[static_cast<std::size_t>(j)].push_back(rows[k]);
    impl_->col_val[static_cast<std::size_t>(j)].push_back(values[k]);
  }
  impl_->structural.push_back(j);
  if (impl_->x[static_cast<std::size_t>(j)] != 0.0) impl_->xb_dirty = true;
  return static_cast<int>(impl_->structural.size()) - 1;
}

int SimplexSolver::add_row(const Constraint& row) {
  for (int j : row.index) {
    if (j < 0 || j >= num_variables()) throw std::invalid_argument("row references an undeclared variable");
  }
  return impl_->append_row(row);
}

void SimplexSolver::set_bounds(int j, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("lower bound exceeds upper bound");
  const auto k = static_cast<std::size_t>(impl_->structural.at(static_cast<std::size_t>(j)));
  auto& I = *impl_;
  const bool was_upper = I.pos[k] < 0 && I.x[k] == I.up[k] && I.x[k] != I.lo[k];
  I.orig_lo[k] = lower;
  I.orig_up[k] = upper;
  I.lo[k] = lower;
  I.up[k] = upper;
  I.artificial[k] = 0;
  if (I.pos[k] < 0) {
    double v = was_upper ? upper : lower;
    if (!std::isfinite(v)) v = std::isfinite(lower) ? lower : (std::isfinite(upper) ? upper : 0.0);
    if (v != I.x[k]) {
      I.x[k] = v;
      I.xb_dirty = true;
    }
  }
}

void SimplexSolver::set_cost(int j, double cost) {
  const auto k = static_cast<std::size_t>(impl_->structural.at(static_cast<std::size_t>(j)));
  impl_->cost[k] = impl_->maximize ? -cost : cost;
}

double SimplexSolver::lower(int j) const {
  return impl_->orig_lo[static_cast<std::size_t>(impl_->structural.at(static_cast<std::size_t>(j)))];
}
double SimplexSolver::upper(int j) const {
  return impl_->orig_up[static_cast<std::size_t>(impl_->structural.at(static_cast<std::size_t>(j)))];
}

int SimplexSolver::num_variables() const { return static_cast<int>(impl_->structural.size()); }
int SimplexSolver::num_rows() const { return impl_->m; }

LpSolution SimplexSolver::solve() { return impl_->run(); }

Basis SimplexSolver::basis() const {
  Basis b;
  b.head = impl_->head;
  b.state.resize(impl_->lo.size(), 0);
  for (std::size_t k = 0; k < impl_->lo.size(); ++k) {
    if (impl_->pos[k] >= 0) continue;
    if (impl_->x[k] == impl_->lo[k]) b.state[k] = -1;
    else if (impl_->x[k] == impl_->up[k]) b.state[k] = 1;
  }
  return b;
}

void SimplexSolver::set_basis(const Basis& basis) {
  auto& I = *impl_;
  const int n_total = I.total();
  if (static_cast<int>(basis.head.size()) > I.m || static_cast<int>(basis.state.size()) > n_total) {
    I.slack_basis();
    return;
  }
  std::vector<int> head = basis.head;
  for (int r = static_cast<int>(head.size()); r < I.m; ++r) head.push_back(I.slack[static_cast<std::size_t>(r)]);
  std::vector<int> pos(static_cast<std::size_t>(n_total), -1);
  for (std::size_t r = 0; r < head.size(); ++r) {
    const int j = head[r];
    if (j < 0 || j >= n_total || pos[static_cast<std::size_t>(j)] >= 0) {
      I.slack_basis();
      return;
    }
    pos[static_cast<std::size_t>(j)] = static_cast<int>(r);
  }
  I.head = std::move(head);
  I.pos = std::move(pos);
  for (int j = 0; j < n_total; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (I.artificial[k]) {
      I.lo[k] = I.orig_lo[k];
      I.up[k] = I.orig_up[k];
      I.artificial[k] = 0;
    }
    if (I.pos[k] >= 0) continue;
    const signed char st = k < basis.state.size() ? basis.state[k] : -1;
    double v = st > 0 ? I.up[k] : I.lo[k];
    if (!std::isfinite(v)) v = I.resting_value(j);
    I.x[k] = v;
  }
  I.factor_valid = false;
  I.refactor();
  I.xb_dirty = true;
}

LpSolution solve_lp(const LinearProgram& lp, SimplexOptions opts) {
  SimplexSolver solver(lp, opts);
  return solver.solve();
}

}  // namespace ors::optkern
