#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ors/domain.hpp"

namespace ors {

/// One surgeon's schedule column: blocks held plus the patient plan that
/// realises (delta, rho).
struct Pattern {
  int surgeon = 0;
  std::vector<int> blocks;                    // ascending block ids
  std::vector<std::pair<int, int>> x_detail;  // (patient, block)
  std::int64_t delta = 0;                     // scheduled slots
  std::int64_t rho = 0;                       // leader priority of omitted patients
  std::int64_t f = 0;                         // follower value of x_detail
};

/// beta*rho - alpha*delta: the pattern's contribution to the leader objective
/// on top of alpha*C.
Rational leader_cost(const Instance& inst, const Pattern& k);

/// Writes the pattern's blocks and patients into an assignment.
void apply_pattern(const Pattern& k, Assignment& a);

}  // namespace ors
