#include <algorithm>
#include <numeric>

#include "ors/follower.hpp"
#include "ors/optkern.hpp"

namespace ors {

LeaderWeights leader_weights(const Instance& inst) {
  LeaderWeights w;
  w.denominator = std::lcm(inst.alpha().denominator(), inst.beta().denominator());
  w.a = inst.alpha().numerator() * (w.denominator / inst.alpha().denominator());
  w.b = inst.beta().numerator() * (w.denominator / inst.beta().denominator());
  return w;
}

std::int64_t follower_big_m(const Instance& inst, int s) {
  std::int64_t m = 0;
  for (int p : inst.patients_of(s)) m += inst.patient(p).prio_follower;
  return m;
}

Rational optimistic_big_m(const Instance& inst, int s) {
  std::int64_t slots = 0;
  std::int64_t prio = 0;
  for (int p : inst.patients_of(s)) {
    slots += inst.patient(p).duration;
    prio += inst.patient(p).prio_leader;
  }
  return inst.alpha() * Rational(std::max<std::int64_t>(inst.capacity(), slots)) + inst.beta() * Rational(prio) + 1;
}

namespace {

// Per-patient item values. With follower_first the follower priority
// dominates and sign selects how the leader gain breaks ties; otherwise the
// value is the leader gain alone.
std::vector<std::int64_t> item_values(const Instance& inst, int s, bool follower_first, int sign) {
  const LeaderWeights lw = leader_weights(inst);
  const auto& ps = inst.patients_of(s);
  std::vector<std::int64_t> values(ps.size(), 0);
  std::int64_t secondary_max = 0;
  for (int p : ps) secondary_max += lw.a * inst.patient(p).duration + lw.b * inst.patient(p).prio_leader;
  const std::int64_t multiplier = (follower_first && sign != 0) ? secondary_max + 1 : 1;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Patient& pt = inst.patient(ps[i]);
    const std::int64_t gain = lw.a * pt.duration + lw.b * pt.prio_leader;
    values[i] = follower_first ? pt.prio_follower * multiplier + sign * gain : gain;
  }
  return values;
}

std::vector<int> solve_with_mip(const Instance& inst, int s, std::span<const int> caps,
                                const std::vector<std::int64_t>& values) {
  const auto& ps = inst.patients_of(s);
  optkern::MipProblem mip;
  mip.lp.set_sense(optkern::Sense::Maximize);
  std::vector<std::vector<int>> var(ps.size(), std::vector<int>(caps.size(), -1));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t k = 0; k < caps.size(); ++k) {
      const int v = mip.lp.add_variable(0.0, 1.0, static_cast<double>(values[i]));
      var[i][k] = v;
      mip.binaries.push_back(v);
    }
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    optkern::Constraint once;
    for (std::size_t k = 0; k < caps.size(); ++k) once.add(var[i][k], 1.0);
    once.rhs = 1.0;
    mip.lp.add_constraint(std::move(once));
  }
  for (std::size_t k = 0; k < caps.size(); ++k) {
    optkern::Constraint cap;
    for (std::size_t i = 0; i < ps.size(); ++i) cap.add(var[i][k], inst.patient(ps[i]).duration);
    cap.rhs = caps[k];
    mip.lp.add_constraint(std::move(cap));
  }
  optkern::MipOptions opt;
  opt.objective_granularity = 1.0;
  const optkern::MipResult r = optkern::solve_mip(mip, opt);
  std::vector<int> bin_of(ps.size(), -1);
  if (!r.has_incumbent()) return bin_of;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t k = 0; k < caps.size(); ++k) {
      if (r.incumbent[static_cast<std::size_t>(var[i][k])] > 0.5) bin_of[i] = static_cast<int>(k);
    }
  }
  return bin_of;
}

FollowerResult solve_bins(const Instance& inst, int s, std::span<const int> caps, bool follower_first, int sign,
                          FollowerEngine engine) {
  const auto& ps = inst.patients_of(s);
  const std::vector<std::int64_t> values = item_values(inst, s, follower_first, sign);
  std::vector<int> bin_of;
  if (engine == FollowerEngine::Mip) {
    bin_of = solve_with_mip(inst, s, caps, values);
  } else {
    std::vector<PackItem> items(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) items[i] = PackItem{inst.patient(ps[i]).duration, values[i]};
    bin_of = solve_multiple_knapsack(items, caps).bin_of;
  }
  FollowerResult res;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Patient& pt = inst.patient(ps[i]);
    if (bin_of[i] >= 0) {
      res.x.emplace_back(ps[i], bin_of[i]);
      res.f_prime += pt.prio_follower;
      res.delta += pt.duration;
    } else {
      res.rho += pt.prio_leader;
    }
  }
  return res;
}

FollowerResult on_blocks(std::span<const int> blocks, FollowerResult res) {
  for (auto& [p, k] : res.x) k = blocks[static_cast<std::size_t>(k)];
  return res;
}

std::vector<int> capacities_of(const Instance& inst, std::span<const int> blocks) {
  std::vector<int> caps(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) caps[k] = inst.block(blocks[k]).length;
  return caps;
}

}  // namespace

FollowerResult solve_follower(const Instance& inst, int s, std::span<const int> blocks, FollowerMode mode,
                              FollowerEngine engine) {
  const std::vector<int> caps = capacities_of(inst, blocks);
  return on_blocks(blocks, solve_bins(inst, s, caps, true, mode == FollowerMode::Pure ? 0 : 1, engine));
}

FollowerResult leader_best_packing(const Instance& inst, int s, std::span<const int> blocks) {
  const std::vector<int> caps = capacities_of(inst, blocks);
  return on_blocks(blocks, solve_bins(inst, s, caps, false, 0, FollowerEngine::Packing));
}

FollowerResult solve_follower_bins(const Instance& inst, int s, std::span<const int> capacities, FollowerMode mode) {
  return solve_bins(inst, s, capacities, true, mode == FollowerMode::Pure ? 0 : 1, FollowerEngine::Packing);
}

FollowerResult leader_best_bins(const Instance& inst, int s, std::span<const int> capacities) {
  return solve_bins(inst, s, capacities, false, 0, FollowerEngine::Packing);
}

FollowerResult follower_then_leader_bins(const Instance& inst, int s, std::span<const int> capacities, int sign) {
  return solve_bins(inst, s, capacities, true, sign, FollowerEngine::Packing);
}

std::vector<FollowerCheck> check_bilevel_feasibility(const Instance& inst, const Assignment& a) {
  std::vector<FollowerCheck> out;
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    FollowerCheck c;
    c.surgeon = s;
    c.f = follower_objective(inst, s, a);
    c.f_prime = solve_follower(inst, s, a.blocks_of(s), FollowerMode::Pure).f_prime;
    c.feasible = c.f == c.f_prime;
    out.push_back(c);
  }
  return out;
}

bool is_bilevel_feasible(const Instance& inst, const Assignment& a) {
  const auto checks = check_bilevel_feasibility(inst, a);
  return std::all_of(checks.begin(), checks.end(), [](const FollowerCheck& c) { return c.feasible; });
}

}  // namespace ors
