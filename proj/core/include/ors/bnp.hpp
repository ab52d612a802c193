#pragma once

// Branch-and-price over per-surgeon schedule columns: restricted master,
// exact pricing with lazy-cut feedback, y-branching and a master heuristic.

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ors/cuts.hpp"
#include "ors/optkern.hpp"
#include "ors/pattern.hpp"
#include "ors/stats.hpp"

namespace ors {

/// What a column's patient plan must satisfy and how columns are priced.
enum class ColumnRule {
  Bilevel,        // plan is follower-optimal, ties in the leader's favour
  Centralized,    // plan is best for the leader, followers ignored
  Decentralized,  // minimise -sum f, ties broken per Tiebreak
};

enum class Tiebreak { Solver, LeaderBest, LeaderWorst };
const char* to_string(Tiebreak t);

enum class PricingEngine {
  Combinatorial,  // profile enumeration + placement DP (default)
  Mip,            // optkern subproblem MIP with lazy-cut callback
};

struct BranchDecision {
  int surgeon = 0;
  int block = 0;
  int value = 0;  // 0 or 1
};
using BranchHistory = std::vector<BranchDecision>;

/// Column objective for a rule: constant + Σ cost(k) θ_k.
struct CostModel {
  ColumnRule rule = ColumnRule::Bilevel;
  Tiebreak tiebreak = Tiebreak::LeaderBest;
  Rational follower_weight{0};  // decentralised: weight of -f, a multiple of the lattice unit

  static CostModel make(const Instance& inst, ColumnRule rule, Tiebreak tiebreak = Tiebreak::LeaderBest);
  Rational cost(const Instance& inst, const Pattern& k) const;
  Rational constant(const Instance& inst) const;
  /// Every integer solution value lies on constant + unit * Z.
  Rational unit(const Instance& inst) const;
};

struct PricingOutcome {
  std::optional<Pattern> pattern;
  double reduced_cost = 0.0;  // best value found (after lazy cuts)
  long callbacks = 0;
  long cuts = 0;
};

struct PricingOptions {
  CostModel cost;
  CutKind cut_kind = CutKind::Objective;
  bool use_lcr = true;
  PricingEngine engine = PricingEngine::Combinatorial;
  double rc_threshold = 1e-6;
  std::function<void(const LazyCut&, const Assignment&)> on_cut;
};

/// Per-surgeon pricing with cached, dual-independent packings.
class Pricer {
 public:
  Pricer(const Instance& inst, PricingOptions options, std::shared_ptr<CutStore> store = nullptr);
  ~Pricer();
  Pricer(Pricer&&) noexcept;

  /// lambda: one dual per grid point (room rows); mu: the surgeon's convexity dual.
  PricingOutcome price(int s, std::span<const double> lambda, double mu, const BranchHistory& history);

  /// Column for s holding exactly the blocks fixed to 1; nullopt when those
  /// blocks break the per-surgeon limits.
  std::optional<Pattern> default_pattern(int s, const BranchHistory& history);
  /// Column for an arbitrary block set under the rule's patient plan.
  Pattern make_pattern(int s, std::vector<int> blocks);

  const CutStore& cuts() const;
  CutStore& cuts();
  const PricingOptions& options() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

PricingOutcome price_surgeon(const Instance& inst, int s, std::span<const double> lambda, double mu,
                             const BranchHistory& history, CutStore& store, CutKind kind);

struct RmpSolution {
  optkern::LpStatus status = optkern::LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<int> columns;    // pool indices present in the LP
  std::vector<double> theta;   // per entry of columns
  std::vector<double> lambda;  // per grid point, <= 0
  std::vector<double> mu;      // per surgeon
};

bool admissible(const Pattern& k, const BranchHistory& history);

RmpSolution solve_rmp(const Instance& inst, std::span<const Pattern> pool, const BranchHistory& history,
                      const CostModel& cost);

struct FractionalY {
  int surgeon = 0;
  int block = 0;
  double value = 0.0;
};

/// Entry closest to 0.5 among fractional ones; ties by (surgeon, block).
/// Throws std::logic_error when every value is integral.
std::pair<int, int> select_branch_variable(std::span<const FractionalY> y);

/// Global column pool, de-duplicated by (surgeon, blocks).
class ColumnPool {
 public:
  /// Index of the stored column; `added` tells whether it is new.
  int add(Pattern k, bool* added = nullptr);
  const std::vector<Pattern>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const Pattern& operator[](std::size_t i) const { return items_[i]; }

 private:
  std::vector<Pattern> items_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

struct CgOptions {
  bool multi_pattern = true;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  /// Incumbent value under the cost model; generation stops once the
  /// Lagrangian bound shows the node cannot beat it.
  std::optional<Rational> cutoff;
};

struct CgResult {
  bool converged = false;
  bool pruned_by_bound = false;
  double lp_bound = 0.0;          // RMP value at the last iteration
  double lagrangian_bound = -optkern::kInf;
  long iterations = 0;
  long columns_added = 0;
  long callbacks = 0;
  long cuts = 0;
  double pricing_seconds = 0.0;
  double master_seconds = 0.0;
  RmpSolution rmp;
  std::vector<FractionalY> y;  // y_sb = Σ a θ over nonzero entries
};

CgResult run_column_generation(const Instance& inst, ColumnPool& pool, const BranchHistory& history,
                               Pricer& pricer, const CgOptions& options);

/// Binary RMP over the pool; every solution is a feasible assignment.
std::optional<Assignment> master_heuristic(const Instance& inst, std::span<const Pattern> pool,
                                           const CostModel& cost, std::optional<Rational> cutoff = {},
                                           long node_limit = 2000, double time_limit = 10.0,
                                           std::optional<double> lower_bound = {});

struct NodeTrace {
  long id = 0;
  double bound = 0.0;
  std::optional<BranchDecision> branch;
  long columns = 0;
};

struct BnpOptions {
  CutKind cut_kind = CutKind::Objective;
  bool multi_pattern = true;
  bool use_lcr = true;
  bool use_initial_heuristic = true;
  double time_limit = 1200.0;
  ColumnRule rule = ColumnRule::Bilevel;
  Tiebreak tiebreak = Tiebreak::LeaderBest;
  PricingEngine pricing = PricingEngine::Combinatorial;
  long heuristic_node_limit = 2000;
  IncumbentHook on_incumbent;
  std::function<void(const LazyCut&, const Assignment&)> on_cut;
  std::function<void(const NodeTrace&)> on_node;
};

struct BnpResult : SolveResult {
  Rational objective{0};        // value under the rule's cost model
  double root_bound = 0.0;      // converged root LP value
  bool root_converged = false;
  bool incumbent_before_root = false;
  std::vector<Pattern> pool;
  std::shared_ptr<CutStore> cuts;
};

BnpResult solve_bnp(const Instance& inst, const BnpOptions& options = {});

}  // namespace ors
