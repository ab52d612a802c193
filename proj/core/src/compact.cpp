#include "ors/compact.hpp"

#include <chrono>

#include "ors/follower.hpp"
#include "ors/leader_model.hpp"

namespace ors {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "OPTIMAL";
    case SolveStatus::TimeLimit: return "TIME_LIMIT";
    case SolveStatus::Infeasible: return "INFEASIBLE";
  }
  return "?";
}

const char* to_string(CutScope s) { return s == CutScope::FirstViolated ? "first" : "all"; }

SolveResult solve_compact(const Instance& inst, const CompactOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  LeaderModel model = build_leader_model(inst, true);
  long cut_counter = 0;

  model.mip.callback = [&](std::span<const double> cand) {
    std::vector<optkern::Constraint> rows;
    const Assignment a = model.decode(inst, cand);
    for (int s = 0; s < inst.num_surgeons(); ++s) {
      const auto& blocks = a.blocks_of(s);
      const FollowerResult pure = solve_follower(inst, s, blocks, FollowerMode::Pure);
      if (follower_objective(inst, s, a) >= pure.f_prime) continue;

      LazyCut cut;
      cut.kind = options.cut_kind;
      cut.surgeon = s;
      cut.profile = profile_of(inst, blocks);
      cut.counter = cut_counter++;
      if (cut.kind == CutKind::Objective) {
        cut.f_c = pure.f_prime;
      } else {
        const FollowerResult opt = solve_follower(inst, s, blocks, FollowerMode::OptimisticCompact);
        for (const auto& [p, b] : opt.x) cut.pa_set.push_back(p);
      }
      CutVariables vars;
      const auto& qs = model.q[static_cast<std::size_t>(s)];
      vars.q = [&qs](int l, int w) { return qs[static_cast<std::size_t>(l)][static_cast<std::size_t>(w)]; };
      vars.x = [&model](int p, int b) { return model.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)]; };
      for (int b = 0; b < inst.num_blocks(); ++b) vars.blocks.push_back(b);
      rows.push_back(build_cut(inst, cut, vars));
      if (options.on_cut) options.on_cut(cut, a);
      if (options.cut_scope == CutScope::FirstViolated) break;
    }
    return rows;
  };

  optkern::MipOptions mo;
  mo.time_limit = options.time_limit;
  mo.gap_tol = options.gap_tol;
  mo.objective_granularity = to_double(inst.objective_unit());
  mo.granularity_offset = to_double(inst.empty_objective());
  if (options.on_incumbent) {
    mo.on_incumbent = [&](std::span<const double> x, double) {
      const Assignment a = model.decode(inst, x);
      options.on_incumbent(a, leader_objective(inst, a));
    };
  }
  const optkern::MipResult r = optkern::solve_mip(model.mip, mo);

  SolveResult out;
  out.assignment = Assignment(inst);
  SolveStats& st = out.stats;
  if (r.has_incumbent()) {
    out.assignment = model.decode(inst, r.incumbent);
    st.feasible_found = true;
    st.F = leader_objective(inst, out.assignment);
  }
  switch (r.status) {
    case optkern::MipStatus::Optimal: st.status = SolveStatus::Optimal; break;
    case optkern::MipStatus::Infeasible: st.status = SolveStatus::Infeasible; break;
    default: st.status = SolveStatus::TimeLimit; break;
  }
  st.bound = r.bound;
  st.F_lpr = r.stats.root_lp_bound;
  st.n_cbs = r.stats.callbacks;
  st.n_lcs = r.stats.lazy_cuts;
  st.n_nodes = r.stats.nodes;
  st.t_cb = r.stats.callback_seconds;
  st.t_mp = r.stats.seconds - r.stats.callback_seconds;
  st.t_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  st.finish_gap();
  return out;
}

}  // namespace ors
