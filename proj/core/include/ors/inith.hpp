#pragma once

// Constructive start heuristic: grow a block schedule greedily with a small
// selection MIP, then let every surgeon plan their own patients.

#include <span>
#include <utility>
#include <vector>

#include "ors/cuts.hpp"
#include "ors/pattern.hpp"

namespace ors {

struct CandidateAssignment {
  int surgeon = 0;
  int block = 0;
  std::vector<int> patients;
  std::int64_t delta_bar = 0;  // slots of the candidate patients
  std::int64_t rho_bar = 0;    // leader priority of the candidate patients
  Rational value{0};           // alpha*delta_bar + beta*rho_bar
};

/// Leader-weighted knapsack over `pool` (patient indices of s) with capacity l.
std::vector<int> knapsack_per_length(const Instance& inst, int s, std::span<const int> pool, int l);

/// Block schedule under construction: blocks per surgeon.
using BlockSchedule = std::vector<std::vector<int>>;

/// Selects at most one new block per surgeon among the candidates, keeping the
/// schedule within rooms and per-surgeon limits. Returns the chosen
/// candidates' indices.
std::vector<int> allocate_step(const Instance& inst, std::span<const CandidateAssignment> candidates,
                               const BlockSchedule& phi);

struct HeuristicResult {
  Assignment assignment;
  Rational F{0};
  BlockSchedule schedule;
  std::vector<Pattern> patterns;  // one per surgeon
  std::vector<LazyCut> cuts;      // one per surgeon holding blocks
  int iterations = 0;
};

HeuristicResult initial_heuristic(const Instance& inst, CutKind kind = CutKind::Objective);

}  // namespace ors
