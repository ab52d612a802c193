#include "ors/inith.hpp"

#include <algorithm>

#include "ors/follower.hpp"
#include "ors/optkern.hpp"

namespace ors {

std::vector<int> knapsack_per_length(const Instance& inst, int s, std::span<const int> pool, int l) {
  (void)s;
  if (l <= 0 || pool.empty()) return {};
  const LeaderWeights lw = leader_weights(inst);
  std::vector<PackItem> items;
  for (int p : pool) {
    const Patient& pt = inst.patient(p);
    items.push_back(PackItem{pt.duration, lw.a * pt.duration + lw.b * pt.prio_leader});
  }
  const int caps[] = {l};
  const PackResult r = solve_multiple_knapsack(items, caps);
  std::vector<int> chosen;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (r.bin_of[i] >= 0) chosen.push_back(pool[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

bool fits_limits(const Instance& inst, const std::vector<int>& held, int b) {
  if (static_cast<int>(held.size()) + 1 > inst.v_horizon()) return false;
  int same_day = 0;
  for (int h : held) {
    if (h == b) return false;
    same_day += inst.block(h).day == inst.block(b).day ? 1 : 0;
  }
  return same_day + 1 <= inst.v_day();
}

}  // namespace

std::vector<int> allocate_step(const Instance& inst, std::span<const CandidateAssignment> candidates,
                               const BlockSchedule& phi) {
  if (candidates.empty()) return {};
  std::vector<int> in_use(static_cast<std::size_t>(inst.num_time_points()), 0);
  for (const auto& held : phi) {
    for (int b : held) {
      for (int pt : inst.covering_points(b)) ++in_use[static_cast<std::size_t>(pt)];
    }
  }
  // Values are multiples of the lattice unit g; the start-time penalty sums
  // to less than one unit, so it only separates otherwise equal choices.
  const Rational g = inst.objective_unit() == 0 ? Rational(1) : inst.objective_unit();
  int max_start = 0;
  for (int t : inst.starts()) max_start = std::max(max_start, t);
  const std::int64_t scale = 1 + static_cast<std::int64_t>(inst.num_surgeons()) * max_start;

  optkern::MipProblem mip;
  mip.lp.set_sense(optkern::Sense::Maximize);
  std::vector<int> col(candidates.size(), -1);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const CandidateAssignment& c = candidates[i];
    const Rational units = c.value / g;
    const double obj = to_double(units) * static_cast<double>(scale) - inst.block(c.block).start;
    col[i] = mip.lp.add_variable(0.0, 1.0, obj);
    mip.binaries.push_back(col[i]);
  }
  for (int pt = 0; pt < inst.num_time_points(); ++pt) {
    optkern::Constraint row;
    row.rhs = inst.rooms() - in_use[static_cast<std::size_t>(pt)];
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& cov = inst.covering_points(candidates[i].block);
      if (std::find(cov.begin(), cov.end(), pt) != cov.end()) row.add(col[i], 1.0);
    }
    if (!row.index.empty()) mip.lp.add_constraint(std::move(row));
  }
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    optkern::Constraint row;
    row.rhs = 1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].surgeon == s) row.add(col[i], 1.0);
    }
    if (!row.index.empty()) mip.lp.add_constraint(std::move(row));
  }
  optkern::MipOptions mo;
  mo.objective_granularity = 1.0;
  const optkern::MipResult r = optkern::solve_mip(mip, mo);
  std::vector<int> chosen;
  if (!r.has_incumbent()) return chosen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (r.incumbent[static_cast<std::size_t>(col[i])] > 0.5) chosen.push_back(static_cast<int>(i));
  }
  return chosen;
}

HeuristicResult initial_heuristic(const Instance& inst, CutKind kind) {
  HeuristicResult res;
  const int ns = inst.num_surgeons();
  res.schedule.assign(static_cast<std::size_t>(ns), {});
  std::vector<std::vector<int>> pool(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) pool[static_cast<std::size_t>(s)] = inst.patients_of(s);
  const LeaderWeights lw = leader_weights(inst);

  while (true) {
    // Step 1: best leader-weighted patient set per (surgeon, length).
    std::vector<CandidateAssignment> cands;
    for (int s = 0; s < ns; ++s) {
      const auto& held = res.schedule[static_cast<std::size_t>(s)];
      for (int l : inst.lengths()) {
        const std::vector<int> chosen = knapsack_per_length(inst, s, pool[static_cast<std::size_t>(s)], l);
        if (chosen.empty()) continue;
        CandidateAssignment base;
        base.surgeon = s;
        base.patients = chosen;
        for (int p : chosen) {
          base.delta_bar += inst.patient(p).duration;
          base.rho_bar += inst.patient(p).prio_leader;
        }
        base.value = inst.alpha() * Rational(base.delta_bar) + inst.beta() * Rational(base.rho_bar);
        if (base.value <= 0 && lw.a + lw.b > 0) continue;
        for (const Block& b : inst.blocks()) {
          if (b.length != l || inst.unavailable(s, b.id) || !fits_limits(inst, held, b.id)) continue;
          CandidateAssignment c = base;
          c.block = b.id;
          cands.push_back(std::move(c));
        }
      }
    }
    // Step 2: selection.
    const std::vector<int> picked = allocate_step(inst, cands, res.schedule);
    if (picked.empty()) break;
    ++res.iterations;
    // Step 3: commit blocks and tentatively schedule their patients.
    for (int i : picked) {
      const CandidateAssignment& c = cands[static_cast<std::size_t>(i)];
      auto& held = res.schedule[static_cast<std::size_t>(c.surgeon)];
      held.push_back(c.block);
      std::sort(held.begin(), held.end());
      auto& pl = pool[static_cast<std::size_t>(c.surgeon)];
      pl.erase(std::remove_if(pl.begin(), pl.end(),
                              [&](int p) { return std::binary_search(c.patients.begin(), c.patients.end(), p); }),
               pl.end());
    }
  }

  // Step 4: keep the blocks, let each surgeon plan; Step 5: evaluate.
  res.assignment = Assignment(inst);
  for (int s = 0; s < ns; ++s) {
    const auto& held = res.schedule[static_cast<std::size_t>(s)];
    const FollowerResult fr = solve_follower(inst, s, held, FollowerMode::OptimisticSubproblem);
    Pattern k;
    k.surgeon = s;
    k.blocks = held;
    k.x_detail = fr.x;
    std::sort(k.x_detail.begin(), k.x_detail.end());
    k.delta = fr.delta;
    k.rho = fr.rho;
    k.f = fr.f_prime;
    apply_pattern(k, res.assignment);
    if (!held.empty()) {
      LazyCut cut;
      cut.kind = kind;
      cut.surgeon = s;
      cut.profile = profile_of(inst, held);
      if (kind == CutKind::Objective) {
        cut.f_c = fr.f_prime;
      } else {
        for (const auto& [p, b] : fr.x) cut.pa_set.push_back(p);
        std::sort(cut.pa_set.begin(), cut.pa_set.end());
      }
      res.cuts.push_back(std::move(cut));
    }
    res.patterns.push_back(std::move(k));
  }
  res.F = leader_objective(inst, res.assignment);
  return res;
}

}  // namespace ors
