#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>

#include "ors/instgen.hpp"

namespace oracle {

namespace {

bool covers(const ors::Block& b, int day, int t) { return b.day == day && b.start <= t && t < b.end(); }

// Room usage per (day, grid start) after adding `blocks`.
bool fits_rooms(const Instance& inst, std::vector<int>& usage, const std::vector<int>& blocks, int sign) {
  bool ok = true;
  const int nt = static_cast<int>(inst.starts().size());
  for (int b : blocks) {
    const ors::Block& blk = inst.block(b);
    for (int ti = 0; ti < nt; ++ti) {
      if (!covers(blk, blk.day, inst.starts()[static_cast<std::size_t>(ti)])) continue;
      int& u = usage[static_cast<std::size_t>(blk.day * nt + ti)];
      u += sign;
      if (u > inst.rooms()) ok = false;
    }
  }
  return ok;
}

struct SetInfo {
  std::vector<int> blocks;
  std::int64_t fmax = 0;
  Rational bil{0};     // min cost among follower-optimal plans
  Rational cen{0};     // min cost among all plans
  Rational worst{0};   // max cost among follower-optimal plans
  Plan bil_plan;
};

std::vector<SetInfo> surgeon_table(const Instance& inst, int s) {
  std::vector<SetInfo> out;
  for (auto& blocks : surgeon_block_sets(inst, s)) {
    SetInfo info;
    info.blocks = blocks;
    const auto plans = all_plans(inst, s, blocks);
    for (const Plan& p : plans) info.fmax = std::max(info.fmax, p.f);
    bool first = true;
    for (const Plan& p : plans) {
      const Rational c = plan_cost(inst, s, p);
      if (first || c < info.cen) info.cen = c;
      first = false;
    }
    bool seen = false;
    for (const Plan& p : plans) {
      if (p.f != info.fmax) continue;
      const Rational c = plan_cost(inst, s, p);
      if (!seen || c < info.bil) {
        info.bil = c;
        info.bil_plan = p;
      }
      if (!seen || c > info.worst) info.worst = c;
      seen = true;
    }
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> surgeon_block_sets(const Instance& inst, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<int> per_day(static_cast<std::size_t>(inst.days()), 0);
  std::function<void(int)> rec = [&](int b) {
    if (b == inst.num_blocks()) {
      out.push_back(cur);
      return;
    }
    rec(b + 1);
    const int d = inst.block(b).day;
    if (inst.unavailable(s, b)) return;
    if (per_day[static_cast<std::size_t>(d)] >= inst.v_day()) return;
    if (static_cast<int>(cur.size()) >= inst.v_horizon()) return;
    ++per_day[static_cast<std::size_t>(d)];
    cur.push_back(b);
    rec(b + 1);
    cur.pop_back();
    --per_day[static_cast<std::size_t>(d)];
  };
  rec(0);
  return out;
}

std::vector<Plan> all_plans(const Instance& inst, int s, const std::vector<int>& blocks) {
  const std::vector<int>& pats = inst.patients_of(s);
  std::vector<int> room;
  for (int b : blocks) room.push_back(inst.block(b).length);
  std::vector<Plan> out;
  Plan cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == pats.size()) {
      out.push_back(cur);
      return;
    }
    rec(i + 1);
    const ors::Patient& p = inst.patient(pats[i]);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (room[k] < p.duration) continue;
      room[k] -= p.duration;
      cur.x.emplace_back(pats[i], blocks[k]);
      cur.f += p.prio_follower;
      cur.slots += p.duration;
      cur.prio_leader += p.prio_leader;
      rec(i + 1);
      cur.x.pop_back();
      cur.f -= p.prio_follower;
      cur.slots -= p.duration;
      cur.prio_leader -= p.prio_leader;
      room[k] += p.duration;
    }
  };
  rec(0);
  return out;
}

std::int64_t follower_optimum(const Instance& inst, int s, const std::vector<int>& blocks) {
  std::int64_t best = 0;
  for (const Plan& p : all_plans(inst, s, blocks)) best = std::max(best, p.f);
  return best;
}

Rational leader_value(const Instance& inst, const Assignment& a) {
  std::int64_t slots = 0;
  std::int64_t omitted = 0;
  for (int p = 0; p < inst.num_patients(); ++p) {
    const ors::Patient& pt = inst.patient(p);
    if (a.scheduled(p)) {
      slots += pt.duration;
    } else {
      omitted += pt.prio_leader;
    }
  }
  return inst.alpha() * Rational(inst.capacity() - slots) + inst.beta() * Rational(omitted);
}

Rational plan_cost(const Instance& inst, int s, const Plan& p) {
  std::int64_t total = 0;
  for (int q : inst.patients_of(s)) total += inst.patient(q).prio_leader;
  return inst.beta() * Rational(total - p.prio_leader) - inst.alpha() * Rational(p.slots);
}

Optima solve(const Instance& inst) {
  const int ns = inst.num_surgeons();
  std::vector<std::vector<SetInfo>> tables;
  for (int s = 0; s < ns; ++s) tables.push_back(surgeon_table(inst, s));

  Optima out;
  bool any = false;
  std::vector<int> usage(static_cast<std::size_t>(inst.days()) * inst.starts().size(), 0);
  std::vector<int> pick(static_cast<std::size_t>(ns), 0);
  std::vector<int> best_pick;
  Rational bil{0}, cen{0}, dbest{0}, dworst{0};
  std::int64_t fsum = 0;

  std::function<void(int)> rec = [&](int s) {
    if (s == ns) {
      if (!any || bil < out.bilevel) {
        out.bilevel = bil;
        best_pick = pick;
      }
      if (!any || cen < out.central) out.central = cen;
      if (!any || fsum > out.dec_sum_f) {
        out.dec_sum_f = fsum;
        out.dec_best = dbest;
        out.dec_worst = dworst;
      } else if (fsum == out.dec_sum_f) {
        out.dec_best = std::min(out.dec_best, dbest);
        out.dec_worst = std::max(out.dec_worst, dworst);
      }
      any = true;
      return;
    }
    const auto& table = tables[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < table.size(); ++i) {
      const SetInfo& si = table[i];
      const bool ok = fits_rooms(inst, usage, si.blocks, +1);
      if (ok) {
        pick[static_cast<std::size_t>(s)] = static_cast<int>(i);
        bil += si.bil;
        cen += si.cen;
        dbest += si.bil;
        dworst += si.worst;
        fsum += si.fmax;
        rec(s + 1);
        bil -= si.bil;
        cen -= si.cen;
        dbest -= si.bil;
        dworst -= si.worst;
        fsum -= si.fmax;
      }
      fits_rooms(inst, usage, si.blocks, -1);
    }
  };
  rec(0);

  const Rational base = inst.alpha() * Rational(inst.capacity());
  out.bilevel += base;
  out.central += base;
  out.dec_best += base;
  out.dec_worst += base;
  out.bilevel_solution = Assignment(inst);
  for (int s = 0; s < ns; ++s) {
    const SetInfo& si = tables[static_cast<std::size_t>(s)][static_cast<std::size_t>(best_pick[static_cast<std::size_t>(s)])];
    for (int b : si.blocks) out.bilevel_solution.assign_block(s, b);
    for (const auto& [p, b] : si.bil_plan.x) out.bilevel_solution.assign_patient(p, b);
  }
  return out;
}

std::vector<Assignment> all_bilevel_feasible(const Instance& inst) {
  const int ns = inst.num_surgeons();
  // Per surgeon: (blocks, follower-optimal plans).
  std::vector<std::vector<std::pair<std::vector<int>, std::vector<Plan>>>> options(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) {
    for (auto& blocks : surgeon_block_sets(inst, s)) {
      auto plans = all_plans(inst, s, blocks);
      std::int64_t fmax = 0;
      for (const Plan& p : plans) fmax = std::max(fmax, p.f);
      std::erase_if(plans, [&](const Plan& p) { return p.f != fmax; });
      options[static_cast<std::size_t>(s)].emplace_back(blocks, std::move(plans));
    }
  }
  std::vector<Assignment> out;
  std::vector<int> usage(static_cast<std::size_t>(inst.days()) * inst.starts().size(), 0);
  std::vector<std::pair<const std::vector<int>*, const Plan*>> chosen(static_cast<std::size_t>(ns));
  std::function<void(int)> rec = [&](int s) {
    if (s == ns) {
      Assignment a(inst);
      for (int r = 0; r < ns; ++r) {
        for (int b : *chosen[static_cast<std::size_t>(r)].first) a.assign_block(r, b);
        for (const auto& [p, b] : chosen[static_cast<std::size_t>(r)].second->x) a.assign_patient(p, b);
      }
      out.push_back(std::move(a));
      return;
    }
    for (const auto& [blocks, plans] : options[static_cast<std::size_t>(s)]) {
      if (fits_rooms(inst, usage, blocks, +1)) {
        for (const Plan& p : plans) {
          chosen[static_cast<std::size_t>(s)] = {&blocks, &p};
          rec(s + 1);
        }
      }
      fits_rooms(inst, usage, blocks, -1);
    }
  };
  rec(0);
  return out;
}

double best_reduced_cost(const Instance& inst, int s, std::span<const double> lambda, double mu,
                         std::span<const std::tuple<int, int, int>> fixings) {
  const int nt = static_cast<int>(inst.starts().size());
  double best = -std::numeric_limits<double>::infinity();
  for (const SetInfo& si : surgeon_table(inst, s)) {
    bool ok = true;
    for (const auto& [fs, fb, fv] : fixings) {
      if (fs != s) continue;
      const bool has = std::find(si.blocks.begin(), si.blocks.end(), fb) != si.blocks.end();
      if (has != (fv == 1)) ok = false;
    }
    if (!ok) continue;
    double dual = mu;
    for (int b : si.blocks) {
      const ors::Block& blk = inst.block(b);
      for (int ti = 0; ti < nt; ++ti) {
        if (covers(blk, blk.day, inst.starts()[static_cast<std::size_t>(ti)])) {
          dual += lambda[static_cast<std::size_t>(blk.day * nt + ti)];
        }
      }
    }
    best = std::max(best, dual - ors::to_double(si.bil));
  }
  return best;
}

std::vector<Instance> small_suite(int count) {
  static const std::pair<int, int> weights[] = {{1, 1}, {1, 0}, {0, 1}, {2, 1}, {1, 3}};
  std::vector<Instance> out;
  std::uint64_t seed = 1000;
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int idx = static_cast<int>(out.size());
    ors::GenParams g;
    g.surgeons = 1 + idx % 3;
    g.days = 1 + (idx / 3) % 2;
    g.rooms = 1;
    g.load_factor = g.days == 1 ? Rational(5, 4) : Rational(3, 5);
    g.alpha = weights[idx % 5].first;
    g.beta = weights[idx % 5].second;
    g.seed = seed++;
    g.name = "small" + std::to_string(idx);
    Instance inst = ors::generate_instance(g);
    if (inst.num_patients() > 8) continue;
    if (idx % 4 == 3) {
      // A few unavailable blocks.
      ors::InstanceSpec spec = inst.spec();
      std::mt19937_64 rng(g.seed);
      for (int k = 0; k < 3; ++k) {
        const int s = static_cast<int>(rng() % static_cast<std::uint64_t>(g.surgeons));
        const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_blocks()));
        spec.unavailability.emplace_back(s, b);
      }
      inst = Instance(std::move(spec));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

Instance t1() {
  ors::InstanceSpec spec;
  spec.name = "T1";
  spec.days = 1;
  spec.rooms = 1;
  spec.slots_per_day = 32;
  spec.v_day = 1;
  spec.v_horizon = 1;
  spec.alpha = 1;
  spec.beta = 1;
  spec.surgeons = {{0, {{0, 10, 2, 1}, {1, 6, 1, 3}}}, {1, {{2, 14, 3, 2}}}};
  return Instance(std::move(spec));
}

Instance t2(const std::vector<int>& lengths) {
  ors::InstanceSpec spec;
  spec.name = "T2";
  spec.days = 1;
  spec.rooms = 1;
  spec.slots_per_day = 32;
  spec.lengths = lengths;
  spec.v_day = 1;
  spec.v_horizon = 1;
  spec.alpha = 1;
  spec.beta = 1;
  spec.surgeons = {{0, {{0, 12, 4, 1}, {1, 10, 1, 3}}}};
  return Instance(std::move(spec));
}

}  // namespace oracle
