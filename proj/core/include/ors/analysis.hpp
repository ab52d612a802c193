#pragma once

// Centralised and decentralised reference solutions, price of stability and
// price of decentralisation, and the scenario sweep behind the comparison table.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ors/bnp.hpp"
#include "ors/stats.hpp"

namespace ors {

enum class AnalysisEngine {
  Decomposition,  // branch-and-price with the matching column rule
  Mip,            // single-level leader model on optkern
};

struct ReferenceOptions {
  double time_limit = 1200.0;
  AnalysisEngine engine = AnalysisEngine::Decomposition;
};

struct ReferenceResult {
  Assignment assignment;
  Rational F{0};
  SolveStatus status = SolveStatus::Infeasible;
  double seconds = 0.0;
  AssignmentMetrics metrics;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Minimises the leader objective with no follower requirement.
ReferenceResult solve_centralized(const Instance& inst, const ReferenceOptions& options = {});
/// Maximises the follower sum; ties among optima settled by `tiebreak`.
ReferenceResult solve_decentralized(const Instance& inst, Tiebreak tiebreak = Tiebreak::LeaderBest,
                                    const ReferenceOptions& options = {});
/// Best bilevel-feasible solution (branch-and-price, no start heuristic).
ReferenceResult solve_bilevel(const Instance& inst, const ReferenceOptions& options = {});

/// Ratio of two leader values. A zero denominator yields 1 when the
/// numerator is also zero and an infinite sentinel otherwise.
struct PriceRatio {
  Rational numerator{0};
  Rational denominator{0};
  bool infinite = false;
  bool non_optimal = false;

  Rational value() const;  // undefined when infinite
  double to_double() const;
  std::string str(int decimals = 3) const;
};

PriceRatio make_ratio(const Rational& numerator, const Rational& denominator, bool both_optimal);
PriceRatio price_of_stability(const Instance& inst, const ReferenceOptions& options = {});
PriceRatio price_of_decentralisation(const Instance& inst, Tiebreak tiebreak = Tiebreak::LeaderBest,
                                     const ReferenceOptions& options = {});

enum class PrioRule { AllOne, Random };

struct ScenarioSpec {
  int id = 1;
  PrioRule leader = PrioRule::AllOne;
  PrioRule follower = PrioRule::AllOne;
  bool shared = true;  // one draw used for both priorities
  Rational alpha{1};
  Rational beta{1};

  static ScenarioSpec make(int id, Rational alpha, Rational beta);
};

/// The twelve (weights, scenario) cells of the comparison table.
std::vector<ScenarioSpec> table_cells();

/// Copy of the instance with priorities redrawn in [1, 4] and weights replaced.
Instance apply_scenario(const Instance& inst, const ScenarioSpec& scenario, std::uint64_t seed);

struct EquilibriumReport {
  std::string instance_id;
  ScenarioSpec scenario;
  std::uint64_t seed = 0;
  ReferenceResult bilevel;
  ReferenceResult decentral;
  ReferenceResult central;
  PriceRatio pos;
  PriceRatio pod;

  bool flagged() const { return !bilevel.optimal() || !decentral.optimal() || !central.optimal(); }
};

struct ScenarioOptions {
  ReferenceOptions reference;
  Tiebreak tiebreak = Tiebreak::LeaderBest;
  std::uint64_t seed = 1;
  int jobs = 1;
};

EquilibriumReport evaluate_scenario(const Instance& base, const ScenarioSpec& scenario, const ScenarioOptions& options);

/// Every (instance, scenario) cell, in input order (instance-major).
std::vector<EquilibriumReport> run_scenarios(std::span<const Instance> instances, std::span<const ScenarioSpec> scenarios,
                                             const ScenarioOptions& options = {});

std::string scenario_csv_header();
std::string scenario_csv_row(const EquilibriumReport& r);

}  // namespace ors
