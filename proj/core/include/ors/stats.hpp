#pragma once

#include <functional>
#include <string>

#include "ors/domain.hpp"

namespace ors {

enum class SolveStatus { Optimal, TimeLimit, Infeasible };
const char* to_string(SolveStatus s);

/// Run metrics shared by both exact solvers. Counters a solver does not use
/// stay at zero.
struct SolveStats {
  SolveStatus status = SolveStatus::Infeasible;
  bool feasible_found = false;
  Rational F{0};
  double bound = 0.0;
  double F_lpr = 0.0;  // root relaxation value
  double gap_root_pct = 0.0;
  long n_cgi = 0;   // column generation iterations
  long n_cols = 0;  // columns in the pool
  long n_lcs = 0;   // lazy cuts generated
  long n_cbs = 0;   // callback invocations
  long n_nodes = 0;
  double t_cb = 0.0;  // callback seconds
  double t_sp = 0.0;  // pricing seconds
  double t_mp = 0.0;  // master seconds
  double t_total = 0.0;

  bool optimal() const { return status == SolveStatus::Optimal; }
  void finish_gap() {
    gap_root_pct = (feasible_found && F_lpr > 0.0) ? 100.0 * (to_double(F) - F_lpr) / F_lpr : 0.0;
  }
};

/// Invoked for every improving incumbent with its exact leader value.
using IncumbentHook = std::function<void(const Assignment&, const Rational&)>;

struct SolveResult {
  Assignment assignment;
  SolveStats stats;
};

}  // namespace ors
