#pragma once

// Internal optimization kernel: a bounded revised simplex (primal and dual)
// exposing duals, and a 0-1 branch-and-bound with a lazy-constraint hook.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ors::optkern {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class RowSense { LessEqual, Equal, GreaterEqual };

struct Variable {
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
  std::string name;
};

/// Sparse linear row: sum(value[k] * x[index[k]]) <sense> rhs.
struct Constraint {
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
  std::string name;

  void add(int var, double coef) {
    index.push_back(var);
    value.push_back(coef);
  }
  double activity(std::span<const double> x) const;
  /// Amount by which x violates the row (0 when satisfied).
  double violation(std::span<const double> x) const;
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::Minimize) : sense_(sense) {}

  int add_variable(double lower, double upper, double cost, std::string name = {});
  int add_constraint(Constraint row);
  void set_sense(Sense s) { sense_ = s; }
  void set_objective_offset(double offset) { offset_ = offset; }
  void set_cost(int j, double cost) { vars_[static_cast<std::size_t>(j)].cost = cost; }
  void set_bounds(int j, double lower, double upper);

  Sense sense() const { return sense_; }
  double objective_offset() const { return offset_; }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int j) const { return vars_[static_cast<std::size_t>(j)]; }
  const Constraint& constraint(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }

  double objective_value(std::span<const double> x) const;

 private:
  Sense sense_;
  double offset_ = 0.0;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };
const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;
  /// d(objective)/d(rhs) per constraint, in the problem's own sense. For a
  /// minimisation, <= rows have duals <= 0, >= rows >= 0, = rows free.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  long iterations = 0;
};

/// Basis snapshot for warm starts. Rows added after the snapshot get their
/// slack made basic on restore.
struct Basis {
  std::vector<int> head;           // basic variable per row position
  std::vector<signed char> state;  // nonbasic placement per variable: -1 lower, +1 upper, 0 basic/free
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  long iteration_limit = 200000;
  int refactor_interval = 64;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
};

/// Incremental bounded revised simplex. Columns, rows and bounds may change
/// between solves; the current basis is reused (primal simplex after column
/// additions, dual simplex after bound changes and new rows).
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions opts = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  int add_column(double lower, double upper, double cost, std::span<const int> rows,
                 std::span<const double> values);
  int add_row(const Constraint& row);
  void set_bounds(int j, double lower, double upper);
  void set_cost(int j, double cost);
  double lower(int j) const;
  double upper(int j) const;

  int num_variables() const;
  int num_rows() const;

  LpSolution solve();

  Basis basis() const;
  void set_basis(const Basis& basis);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution solve_lp(const LinearProgram& lp, SimplexOptions opts = {});

/// Lazy-constraint callback: receives an integer-feasible candidate (binaries
/// rounded) and returns the rows it violates. An empty result accepts it.
using LazyCallback = std::function<std::vector<Constraint>(std::span<const double> candidate)>;

struct MipProblem {
  LinearProgram lp;
  std::vector<int> binaries;
  LazyCallback callback;  // optional
};

struct MipOptions {
  double time_limit = kInf;  // seconds
  double gap_tol = 1e-6;
  long node_limit = std::numeric_limits<long>::max();
  double integrality_tol = 1e-6;
  /// Known objective value that must be strictly improved on (problem sense).
  std::optional<double> cutoff;
  /// Stop once an incumbent at least this good is found (problem sense).
  std::optional<double> stop_at;
  /// When > 0, every feasible objective lies on offset + granularity * Z; node
  /// bounds are rounded up to that lattice before pruning.
  double objective_granularity = 0.0;
  double granularity_offset = 0.0;
  std::function<void(std::span<const double> x, double objective)> on_incumbent;
  SimplexOptions simplex;
};

enum class MipStatus { Optimal, Infeasible, TimeLimit, NodeLimit, Unbounded };
const char* to_string(MipStatus s);

struct MipTracePoint {
  double bound;
  double incumbent;
};

struct MipStats {
  long nodes = 0;
  long lp_iterations = 0;
  long callbacks = 0;
  long lazy_cuts = 0;
  double root_lp_bound = 0.0;
  bool root_lp_solved = false;
  double seconds = 0.0;
  double callback_seconds = 0.0;
  std::vector<MipTracePoint> trace;
};

struct MipResult {
  MipStatus status = MipStatus::Infeasible;
  std::vector<double> incumbent;  // empty when none found
  double objective = 0.0;         // incumbent objective (problem sense)
  double bound = 0.0;             // best proven bound (problem sense)
  MipStats stats;

  bool has_incumbent() const { return !incumbent.empty(); }
};

MipResult solve_mip(const MipProblem& problem, const MipOptions& options = {});

}  // namespace ors::optkern
