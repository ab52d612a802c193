#pragma once

// Lazy-constraint solver: the leader MIP with a bilevel-feasibility callback
// that injects objective- or assignment-based cuts.

#include "ors/cuts.hpp"
#include "ors/stats.hpp"

namespace ors {

enum class CutScope { FirstViolated, AllViolated };
const char* to_string(CutScope s);

struct CompactOptions {
  CutKind cut_kind = CutKind::Objective;
  CutScope cut_scope = CutScope::AllViolated;
  double time_limit = 1200.0;
  double gap_tol = 1e-6;
  IncumbentHook on_incumbent;
  /// Sees every generated cut together with the candidate that triggered it.
  std::function<void(const LazyCut&, const Assignment&)> on_cut;
};

SolveResult solve_compact(const Instance& inst, const CompactOptions& options = {});

}  // namespace ors
