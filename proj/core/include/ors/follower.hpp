#pragma once

// Surgeon (follower) problem: assign own patients to the blocks received so
// as to maximise follower priority, optionally tie-broken in the leader's
// favour; plus bilevel-feasibility checking of a full assignment.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ors/domain.hpp"

namespace ors {

/// Exact multiple knapsack: maximise the total value of packed items subject
/// to per-bin capacities. Items with non-positive value are never packed.
struct PackItem {
  int weight = 0;
  std::int64_t value = 0;
};

struct PackResult {
  std::int64_t value = 0;
  std::vector<int> bin_of;  // per item, -1 when left out
};

PackResult solve_multiple_knapsack(std::span<const PackItem> items, std::span<const int> capacities);

enum class FollowerMode {
  Pure,                  // maximise follower priority only
  OptimisticCompact,     // ties broken by the full leader objective
  OptimisticSubproblem,  // ties broken by alpha*Delta - beta*rho
};

enum class FollowerEngine {
  Packing,  // dedicated branch-and-bound multiple knapsack
  Mip,      // optkern model, used as the reference path in tests
};

struct FollowerResult {
  std::vector<std::pair<int, int>> x;  // (patient, block), ascending by patient
  std::int64_t f_prime = 0;
  std::int64_t delta = 0;  // scheduled slots
  std::int64_t rho = 0;    // leader priority of omitted patients
};

FollowerResult solve_follower(const Instance& inst, int s, std::span<const int> blocks, FollowerMode mode,
                              FollowerEngine engine = FollowerEngine::Packing);

/// Best packing for the leader alone (no follower optimality requirement);
/// f_prime then holds the follower value of that packing.
FollowerResult leader_best_packing(const Instance& inst, int s, std::span<const int> blocks);

/// Variants on anonymous bins of the given capacities; x then holds
/// (patient, bin index) pairs.
FollowerResult solve_follower_bins(const Instance& inst, int s, std::span<const int> capacities, FollowerMode mode);
FollowerResult leader_best_bins(const Instance& inst, int s, std::span<const int> capacities);
/// Maximises follower value, then the leader gain (sign > 0), its negation
/// (sign < 0) or nothing (sign == 0).
FollowerResult follower_then_leader_bins(const Instance& inst, int s, std::span<const int> capacities, int sign);

/// Sum of follower priorities of s's patients; big-M of the lazy cuts.
std::int64_t follower_big_m(const Instance& inst, int s);

/// Normaliser of the optimistic tie-break term; strictly exceeds the
/// magnitude of that term for surgeon s.
Rational optimistic_big_m(const Instance& inst, int s);

/// Integer weights (A, B) proportional to (alpha, beta): the leader gain of a
/// patient set is A*slots + B*priority in units of 1/denominator.
struct LeaderWeights {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t denominator = 1;
};
LeaderWeights leader_weights(const Instance& inst);

struct FollowerCheck {
  int surgeon = 0;
  std::int64_t f = 0;
  std::int64_t f_prime = 0;
  bool feasible = true;
};

std::vector<FollowerCheck> check_bilevel_feasibility(const Instance& inst, const Assignment& a);
bool is_bilevel_feasible(const Instance& inst, const Assignment& a);

}  // namespace ors
