#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ors/bnp.hpp"
#include "ors/follower.hpp"

namespace ors {

const char* to_string(Tiebreak t) {
  switch (t) {
    case Tiebreak::Solver: return "solver";
    case Tiebreak::LeaderBest: return "leader_best";
    case Tiebreak::LeaderWorst: return "leader_worst";
  }
  return "?";
}

Rational leader_cost(const Instance& inst, const Pattern& k) {
  return inst.beta() * Rational(k.rho) - inst.alpha() * Rational(k.delta);
}

void apply_pattern(const Pattern& k, Assignment& a) {
  for (int b : k.blocks) a.assign_block(k.surgeon, b);
  for (const auto& [p, b] : k.x_detail) a.assign_patient(p, b);
}

CostModel CostModel::make(const Instance& inst, ColumnRule rule, Tiebreak tiebreak) {
  CostModel m;
  m.rule = rule;
  m.tiebreak = tiebreak;
  if (rule == ColumnRule::Decentralized) {
    std::int64_t slots = 0;
    for (const Patient& p : inst.patients()) slots += p.duration;
    const Rational span = inst.alpha() * Rational(std::max<std::int64_t>(inst.capacity(), slots)) +
                          inst.beta() * Rational(inst.total_prio_leader()) + 1;
    const Rational g = inst.objective_unit();
    if (g == 0) {
      m.follower_weight = 1;
    } else {
      const Rational q = span / g;
      const std::int64_t steps = q.numerator() / q.denominator() + 1;
      m.follower_weight = g * Rational(steps);
    }
  }
  return m;
}

Rational CostModel::cost(const Instance& inst, const Pattern& k) const {
  const Rational lc = leader_cost(inst, k);
  if (rule != ColumnRule::Decentralized) return lc;
  const Rational base = -follower_weight * Rational(k.f);
  switch (tiebreak) {
    case Tiebreak::LeaderBest: return base + lc;
    case Tiebreak::LeaderWorst: return base - lc;
    case Tiebreak::Solver: return base;
  }
  return base;
}

Rational CostModel::constant(const Instance& inst) const {
  return rule == ColumnRule::Decentralized ? Rational(0) : inst.alpha() * Rational(inst.capacity());
}

Rational CostModel::unit(const Instance& inst) const {
  const Rational g = inst.objective_unit();
  if (rule == ColumnRule::Decentralized && g == 0) return follower_weight;
  return g;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ProfileInfo {
  bool ready = false;
  std::vector<int> bins;  // capacities, ascending
  // Plan prescribed by the column rule.
  FollowerResult plan;
  Rational cost{0};
  double cost_d = 0.0;
  // Bilevel only: the leader's unconstrained packing and the follower optimum.
  FollowerResult relaxed;
  double relaxed_cost_d = 0.0;
  std::int64_t f_pure = 0;
};

struct SurgeonCache {
  std::vector<ProfileInfo> info;  // by profile code
};

struct DayOption {
  int code_delta = 0;
  std::vector<int> counts;
  double weight = 0.0;
  std::vector<int> blocks;
};

}  // namespace

struct Pricer::Impl {
  const Instance& inst;
  PricingOptions opt;
  std::shared_ptr<CutStore> store;
  std::vector<int> radix;   // W_l + 1
  std::vector<int> weight;  // mixed-radix place values
  int ncodes = 1;
  std::vector<std::vector<int>> digits;  // per code
  std::vector<char> valid;               // sum of counts within v^h
  std::vector<SurgeonCache> cache;

  Impl(const Instance& i, PricingOptions o, std::shared_ptr<CutStore> st)
      : inst(i), opt(std::move(o)), store(std::move(st)) {
    if (!store) store = std::make_shared<CutStore>(inst.num_surgeons());
    const auto& wb = inst.max_blocks_per_length();
    for (int w : wb) {
      weight.push_back(ncodes);
      radix.push_back(w + 1);
      ncodes *= (w + 1);
    }
    digits.assign(static_cast<std::size_t>(ncodes), {});
    valid.assign(static_cast<std::size_t>(ncodes), 0);
    for (int c = 0; c < ncodes; ++c) {
      std::vector<int> d(radix.size());
      int rest = c;
      int total = 0;
      for (std::size_t l = 0; l < radix.size(); ++l) {
        d[l] = rest % radix[l];
        rest /= radix[l];
        total += d[l];
      }
      digits[static_cast<std::size_t>(c)] = d;
      valid[static_cast<std::size_t>(c)] = total <= inst.v_horizon();
    }
    cache.assign(static_cast<std::size_t>(inst.num_surgeons()), {});
    for (auto& sc : cache) sc.info.assign(static_cast<std::size_t>(ncodes), {});
  }

  int code_of(const Profile& n) const {
    int c = 0;
    for (std::size_t l = 0; l < n.size(); ++l) {
      if (n[l] < 0 || n[l] >= radix[l]) return -1;
      c += n[l] * weight[l];
    }
    return c;
  }

  ProfileInfo& info(int s, int code) {
    ProfileInfo& pi = cache[static_cast<std::size_t>(s)].info[static_cast<std::size_t>(code)];
    if (pi.ready) return pi;
    const auto& d = digits[static_cast<std::size_t>(code)];
    for (std::size_t l = 0; l < d.size(); ++l) {
      for (int k = 0; k < d[l]; ++k) pi.bins.push_back(inst.lengths()[l]);
    }
    auto cost_of = [&](const FollowerResult& r) {
      Pattern k;
      k.delta = r.delta;
      k.rho = r.rho;
      k.f = r.f_prime;
      return opt.cost.cost(inst, k);
    };
    switch (opt.cost.rule) {
      case ColumnRule::Bilevel:
        pi.plan = solve_follower_bins(inst, s, pi.bins, FollowerMode::OptimisticSubproblem);
        pi.relaxed = leader_best_bins(inst, s, pi.bins);
        pi.f_pure = pi.plan.f_prime;
        pi.relaxed_cost_d = to_double(cost_of(pi.relaxed));
        break;
      case ColumnRule::Centralized:
        pi.plan = leader_best_bins(inst, s, pi.bins);
        break;
      case ColumnRule::Decentralized: {
        const int sign = opt.cost.tiebreak == Tiebreak::LeaderBest ? 1 : opt.cost.tiebreak == Tiebreak::LeaderWorst ? -1 : 0;
        pi.plan = follower_then_leader_bins(inst, s, pi.bins, sign);
        break;
      }
    }
    pi.cost = cost_of(pi.plan);
    pi.cost_d = to_double(pi.cost);
    pi.ready = true;
    return pi;
  }

  Pattern build(int s, std::vector<int> blocks, const FollowerResult& plan) const {
    std::sort(blocks.begin(), blocks.end());
    std::vector<int> by_len = blocks;
    std::stable_sort(by_len.begin(), by_len.end(),
                     [&](int a, int b) { return inst.block(a).length < inst.block(b).length; });
    Pattern k;
    k.surgeon = s;
    k.blocks = std::move(blocks);
    for (const auto& [p, bin] : plan.x) k.x_detail.emplace_back(p, by_len[static_cast<std::size_t>(bin)]);
    std::sort(k.x_detail.begin(), k.x_detail.end());
    k.delta = plan.delta;
    k.rho = plan.rho;
    k.f = plan.f_prime;
    return k;
  }

  Pattern make_pattern(int s, std::vector<int> blocks) {
    const int code = code_of(profile_of(inst, blocks));
    if (code < 0) throw std::invalid_argument("block set exceeds the per-length limits");
    return build(s, std::move(blocks), info(s, code).plan);
  }

  // Per-surgeon fixings from the branching history.
  void fixings(int s, const BranchHistory& h, std::vector<char>& forbidden, std::vector<char>& forced) const {
    forbidden.assign(static_cast<std::size_t>(inst.num_blocks()), 0);
    forced.assign(static_cast<std::size_t>(inst.num_blocks()), 0);
    for (int b = 0; b < inst.num_blocks(); ++b) forbidden[static_cast<std::size_t>(b)] = inst.unavailable(s, b);
    for (const BranchDecision& d : h) {
      if (d.surgeon != s) continue;
      if (d.value == 0) forbidden[static_cast<std::size_t>(d.block)] = 1;
      else forced[static_cast<std::size_t>(d.block)] = 1;
    }
  }

  std::optional<Pattern> default_pattern(int s, const BranchHistory& h) {
    std::vector<char> forbidden;
    std::vector<char> forced;
    fixings(s, h, forbidden, forced);
    std::vector<int> blocks;
    std::vector<int> per_day(static_cast<std::size_t>(inst.days()), 0);
    for (int b = 0; b < inst.num_blocks(); ++b) {
      if (!forced[static_cast<std::size_t>(b)]) continue;
      if (forbidden[static_cast<std::size_t>(b)]) return std::nullopt;
      blocks.push_back(b);
      if (++per_day[static_cast<std::size_t>(inst.block(b).day)] > inst.v_day()) return std::nullopt;
    }
    if (static_cast<int>(blocks.size()) > inst.v_horizon()) return std::nullopt;
    return make_pattern(s, std::move(blocks));
  }

  // Best placement weight for every profile code. choice[d][code] records
  // the option taken on day d to reach code.
  std::vector<double> placement(int s, const std::vector<double>& block_weight, const BranchHistory& h,
                                std::vector<std::vector<DayOption>>& options,
                                std::vector<std::vector<int>>& choice) const {
    std::vector<char> forbidden;
    std::vector<char> forced;
    fixings(s, h, forbidden, forced);
    const int nl = static_cast<int>(radix.size());
    options.assign(static_cast<std::size_t>(inst.days()), {});
    for (int d = 0; d < inst.days(); ++d) {
      std::vector<int> allowed;
      std::vector<int> must;
      for (int b : inst.blocks_on_day(d)) {
        if (forced[static_cast<std::size_t>(b)]) {
          if (forbidden[static_cast<std::size_t>(b)]) return std::vector<double>(static_cast<std::size_t>(ncodes), kNegInf);
          must.push_back(b);
        } else if (!forbidden[static_cast<std::size_t>(b)]) allowed.push_back(b);
      }
      auto& opts = options[static_cast<std::size_t>(d)];
      if (static_cast<int>(must.size()) > inst.v_day()) return std::vector<double>(static_cast<std::size_t>(ncodes), kNegInf);
      const int extra = inst.v_day() - static_cast<int>(must.size());
      // Enumerate subsets of `allowed` of size <= extra, each joined with `must`.
      std::vector<int> pick;
      auto emit = [&]() {
        DayOption o;
        o.counts.assign(static_cast<std::size_t>(nl), 0);
        for (int b : must) {
          o.blocks.push_back(b);
          o.weight += block_weight[static_cast<std::size_t>(b)];
          ++o.counts[static_cast<std::size_t>(inst.length_index(inst.block(b).length))];
        }
        for (int b : pick) {
          o.blocks.push_back(b);
          o.weight += block_weight[static_cast<std::size_t>(b)];
          ++o.counts[static_cast<std::size_t>(inst.length_index(inst.block(b).length))];
        }
        for (int l = 0; l < nl; ++l) {
          if (o.counts[static_cast<std::size_t>(l)] >= radix[static_cast<std::size_t>(l)]) return;
          o.code_delta += o.counts[static_cast<std::size_t>(l)] * weight[static_cast<std::size_t>(l)];
        }
        for (DayOption& other : opts) {
          if (other.counts == o.counts) {
            if (o.weight > other.weight + 1e-12) other = std::move(o);
            return;
          }
        }
        opts.push_back(std::move(o));
      };
      auto rec = [&](auto&& self, std::size_t from) -> void {
        emit();
        if (static_cast<int>(pick.size()) == extra) return;
        for (std::size_t i = from; i < allowed.size(); ++i) {
          pick.push_back(allowed[i]);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      rec(rec, 0);
    }

    std::vector<double> dp(static_cast<std::size_t>(ncodes), kNegInf);
    dp[0] = 0.0;
    choice.assign(static_cast<std::size_t>(inst.days()), std::vector<int>(static_cast<std::size_t>(ncodes), -1));
    for (int d = 0; d < inst.days(); ++d) {
      std::vector<double> next(static_cast<std::size_t>(ncodes), kNegInf);
      auto& ch = choice[static_cast<std::size_t>(d)];
      const auto& opts = options[static_cast<std::size_t>(d)];
      for (int c = 0; c < ncodes; ++c) {
        const double base = dp[static_cast<std::size_t>(c)];
        if (base == kNegInf) continue;
        const auto& dg = digits[static_cast<std::size_t>(c)];
        for (std::size_t oi = 0; oi < opts.size(); ++oi) {
          const DayOption& o = opts[oi];
          bool fits = true;
          for (int l = 0; l < nl && fits; ++l) {
            fits = dg[static_cast<std::size_t>(l)] + o.counts[static_cast<std::size_t>(l)] < radix[static_cast<std::size_t>(l)];
          }
          if (!fits) continue;
          const int nc = c + o.code_delta;
          const double v = base + o.weight;
          if (v > next[static_cast<std::size_t>(nc)] + 1e-12) {
            next[static_cast<std::size_t>(nc)] = v;
            ch[static_cast<std::size_t>(nc)] = static_cast<int>(oi);
          }
        }
      }
      dp = std::move(next);
    }
    return dp;
  }

  std::vector<int> reconstruct(int code, const std::vector<std::vector<DayOption>>& options,
                               const std::vector<std::vector<int>>& choice) const {
    std::vector<int> blocks;
    for (int d = inst.days() - 1; d >= 0; --d) {
      const int oi = choice[static_cast<std::size_t>(d)][static_cast<std::size_t>(code)];
      const DayOption& o = options[static_cast<std::size_t>(d)][static_cast<std::size_t>(oi)];
      blocks.insert(blocks.end(), o.blocks.begin(), o.blocks.end());
      code -= o.code_delta;
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
  }

  std::vector<double> block_weights(std::span<const double> lambda) const {
    std::vector<double> w(static_cast<std::size_t>(inst.num_blocks()), 0.0);
    for (int b = 0; b < inst.num_blocks(); ++b) {
      for (int pt : inst.covering_points(b)) w[static_cast<std::size_t>(b)] += lambda[static_cast<std::size_t>(pt)];
    }
    return w;
  }

  LazyCut make_cut(int s, int code, const ProfileInfo& pi) const {
    LazyCut cut;
    cut.kind = opt.cut_kind;
    cut.surgeon = s;
    cut.profile = digits[static_cast<std::size_t>(code)];
    if (cut.kind == CutKind::Objective) {
      cut.f_c = pi.f_pure;
    } else {
      for (const auto& [p, bin] : pi.plan.x) cut.pa_set.push_back(p);
      std::sort(cut.pa_set.begin(), cut.pa_set.end());
    }
    return cut;
  }

  PricingOutcome price_combinatorial(int s, std::span<const double> lambda, double mu, const BranchHistory& h) {
    PricingOutcome out;
    const std::vector<double> bw = block_weights(lambda);
    std::vector<std::vector<DayOption>> options;
    std::vector<std::vector<int>> choice;
    const std::vector<double> dp = placement(s, bw, h, options, choice);

    const bool lazy = opt.cost.rule == ColumnRule::Bilevel;
    std::vector<char> known(static_cast<std::size_t>(ncodes), 0);
    if (lazy && opt.use_lcr) {
      for (const LazyCut& c : store->retrieve(s)) {
        if (c.kind != opt.cut_kind) continue;
        const int code = code_of(c.profile);
        if (code >= 0) known[static_cast<std::size_t>(code)] = 1;
      }
    }

    while (true) {
      double best = kNegInf;
      int best_code = -1;
      for (int c = 0; c < ncodes; ++c) {
        if (!valid[static_cast<std::size_t>(c)] || dp[static_cast<std::size_t>(c)] == kNegInf) continue;
        ProfileInfo& pi = info(s, c);
        const double cost = (lazy && !known[static_cast<std::size_t>(c)]) ? pi.relaxed_cost_d : pi.cost_d;
        const double v = dp[static_cast<std::size_t>(c)] + mu - cost;
        if (v > best + 1e-12) {
          best = v;
          best_code = c;
        }
      }
      out.reduced_cost = best;
      if (best_code < 0 || best <= opt.rc_threshold) return out;

      ProfileInfo& pi = info(s, best_code);
      if (lazy) {
        ++out.callbacks;
        if (!known[static_cast<std::size_t>(best_code)] && pi.relaxed.f_prime < pi.f_pure) {
          LazyCut cut = make_cut(s, best_code, pi);
          if (opt.on_cut) {
            const std::vector<int> blocks = reconstruct(best_code, options, choice);
            Assignment trigger(inst);
            apply_pattern(build(s, blocks, pi.relaxed), trigger);
            opt.on_cut(cut, trigger);
          }
          if (opt.use_lcr) store->record(cut);
          known[static_cast<std::size_t>(best_code)] = 1;
          ++out.cuts;
          continue;
        }
      }
      out.pattern = build(s, reconstruct(best_code, options, choice), pi.plan);
      return out;
    }
  }

  PricingOutcome price_mip(int s, std::span<const double> lambda, double mu, const BranchHistory& h);
};

PricingOutcome Pricer::Impl::price_mip(int s, std::span<const double> lambda, double mu, const BranchHistory& h) {
  if (opt.cost.rule == ColumnRule::Decentralized) {
    throw std::invalid_argument("the MIP pricing engine supports the bilevel and centralised rules only");
  }
  PricingOutcome out;
  const std::vector<double> bw = block_weights(lambda);
  std::vector<char> forbidden;
  std::vector<char> forced;
  fixings(s, h, forbidden, forced);

  optkern::MipProblem mip;
  auto& lp = mip.lp;
  lp.set_sense(optkern::Sense::Maximize);
  const double alpha = to_double(inst.alpha());
  const double beta = to_double(inst.beta());
  std::int64_t prio_total = 0;
  for (int p : inst.patients_of(s)) prio_total += inst.patient(p).prio_leader;
  lp.set_objective_offset(mu - beta * static_cast<double>(prio_total));

  std::vector<int> ycol(static_cast<std::size_t>(inst.num_blocks()), -1);
  for (int b = 0; b < inst.num_blocks(); ++b) {
    const auto k = static_cast<std::size_t>(b);
    if (forbidden[k] && !forced[k]) continue;
    if (forbidden[k] && forced[k]) return out;
    const double lo = forced[k] ? 1.0 : 0.0;
    ycol[k] = lp.add_variable(lo, 1.0, bw[k]);
    mip.binaries.push_back(ycol[k]);
  }
  const auto& ps = inst.patients_of(s);
  std::vector<std::vector<int>> xcol(static_cast<std::size_t>(inst.num_patients()));
  for (int p : ps) {
    auto& row = xcol[static_cast<std::size_t>(p)];
    row.assign(static_cast<std::size_t>(inst.num_blocks()), -1);
    const Patient& pt = inst.patient(p);
    for (int b = 0; b < inst.num_blocks(); ++b) {
      if (ycol[static_cast<std::size_t>(b)] < 0) continue;
      row[static_cast<std::size_t>(b)] = lp.add_variable(0.0, 1.0, alpha * pt.duration + beta * pt.prio_leader);
      mip.binaries.push_back(row[static_cast<std::size_t>(b)]);
    }
  }
  const std::vector<int> wb = w_bounds(inst);
  std::vector<std::vector<int>> qcol(wb.size());
  for (std::size_t l = 0; l < wb.size(); ++l) {
    for (int w = 0; w <= wb[l]; ++w) {
      qcol[l].push_back(lp.add_variable(0.0, 1.0, 0.0));
      mip.binaries.push_back(qcol[l].back());
    }
  }
  for (int d = 0; d < inst.days(); ++d) {
    optkern::Constraint row;
    row.rhs = inst.v_day();
    for (int b : inst.blocks_on_day(d)) {
      if (ycol[static_cast<std::size_t>(b)] >= 0) row.add(ycol[static_cast<std::size_t>(b)], 1.0);
    }
    if (!row.index.empty()) lp.add_constraint(std::move(row));
  }
  {
    optkern::Constraint row;
    row.rhs = inst.v_horizon();
    for (int col : ycol) {
      if (col >= 0) row.add(col, 1.0);
    }
    if (!row.index.empty()) lp.add_constraint(std::move(row));
  }
  for (int p : ps) {
    optkern::Constraint row;
    row.rhs = 1.0;
    for (int col : xcol[static_cast<std::size_t>(p)]) {
      if (col >= 0) row.add(col, 1.0);
    }
    if (!row.index.empty()) lp.add_constraint(std::move(row));
  }
  for (int b = 0; b < inst.num_blocks(); ++b) {
    if (ycol[static_cast<std::size_t>(b)] < 0) continue;
    optkern::Constraint row;
    for (int p : ps) row.add(xcol[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)], inst.patient(p).duration);
    row.add(ycol[static_cast<std::size_t>(b)], -inst.block(b).length);
    lp.add_constraint(std::move(row));
  }
  for (optkern::Constraint& row : build_q_link(
           inst, [&](int l, int w) { return qcol[static_cast<std::size_t>(l)][static_cast<std::size_t>(w)]; },
           [&](int b) { return ycol[static_cast<std::size_t>(b)]; })) {
    lp.add_constraint(std::move(row));
  }

  CutVariables vars;
  vars.q = [&](int l, int w) { return qcol[static_cast<std::size_t>(l)][static_cast<std::size_t>(w)]; };
  vars.x = [&](int p, int b) {
    const auto& row = xcol[static_cast<std::size_t>(p)];
    return row.empty() ? -1 : row[static_cast<std::size_t>(b)];
  };
  for (int b = 0; b < inst.num_blocks(); ++b) vars.blocks.push_back(b);

  auto decode = [&](std::span<const double> x, std::vector<int>& blocks, std::vector<std::pair<int, int>>& plan) {
    for (int b = 0; b < inst.num_blocks(); ++b) {
      const int col = ycol[static_cast<std::size_t>(b)];
      if (col >= 0 && x[static_cast<std::size_t>(col)] > 0.5) blocks.push_back(b);
    }
    for (int p : ps) {
      for (int b = 0; b < inst.num_blocks(); ++b) {
        const int col = xcol[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)];
        if (col >= 0 && x[static_cast<std::size_t>(col)] > 0.5) plan.emplace_back(p, b);
      }
    }
  };

  if (opt.cost.rule == ColumnRule::Bilevel) {
    if (opt.use_lcr) {
      for (const LazyCut& c : store->retrieve(s)) {
        if (c.kind == opt.cut_kind) lp.add_constraint(build_cut(inst, c, vars));
      }
    }
    mip.callback = [&](std::span<const double> x) {
      std::vector<optkern::Constraint> rows;
      std::vector<int> blocks;
      std::vector<std::pair<int, int>> plan;
      decode(x, blocks, plan);
      std::int64_t f = 0;
      for (const auto& [p, b] : plan) f += inst.patient(p).prio_follower;
      const FollowerResult pure = solve_follower(inst, s, blocks, FollowerMode::Pure);
      if (f >= pure.f_prime) return rows;
      LazyCut cut;
      cut.kind = opt.cut_kind;
      cut.surgeon = s;
      cut.profile = profile_of(inst, blocks);
      if (cut.kind == CutKind::Objective) {
        cut.f_c = pure.f_prime;
      } else {
        const FollowerResult o = solve_follower(inst, s, blocks, FollowerMode::OptimisticSubproblem);
        for (const auto& [p, b] : o.x) cut.pa_set.push_back(p);
      }
      if (opt.on_cut) {
        Assignment trigger(inst);
        for (int b : blocks) trigger.assign_block(s, b);
        for (const auto& [p, b] : plan) trigger.assign_patient(p, b);
        opt.on_cut(cut, trigger);
      }
      if (opt.use_lcr) store->record(cut);
      rows.push_back(build_cut(inst, cut, vars));
      return rows;
    };
  }

  const optkern::MipResult r = optkern::solve_mip(mip, {});
  out.callbacks = r.stats.callbacks;
  out.cuts = r.stats.lazy_cuts;
  if (!r.has_incumbent()) {
    out.reduced_cost = kNegInf;
    return out;
  }
  out.reduced_cost = r.objective;
  if (r.objective <= opt.rc_threshold) return out;
  Pattern k;
  k.surgeon = s;
  decode(r.incumbent, k.blocks, k.x_detail);
  std::int64_t scheduled_prio = 0;
  for (const auto& [p, b] : k.x_detail) {
    k.delta += inst.patient(p).duration;
    k.f += inst.patient(p).prio_follower;
    scheduled_prio += inst.patient(p).prio_leader;
  }
  k.rho = prio_total - scheduled_prio;
  out.pattern = std::move(k);
  return out;
}

Pricer::Pricer(const Instance& inst, PricingOptions options, std::shared_ptr<CutStore> store)
    : impl_(std::make_unique<Impl>(inst, std::move(options), std::move(store))) {}
Pricer::~Pricer() = default;
Pricer::Pricer(Pricer&&) noexcept = default;

PricingOutcome Pricer::price(int s, std::span<const double> lambda, double mu, const BranchHistory& history) {
  if (impl_->opt.engine == PricingEngine::Mip) return impl_->price_mip(s, lambda, mu, history);
  return impl_->price_combinatorial(s, lambda, mu, history);
}

std::optional<Pattern> Pricer::default_pattern(int s, const BranchHistory& history) {
  return impl_->default_pattern(s, history);
}

Pattern Pricer::make_pattern(int s, std::vector<int> blocks) { return impl_->make_pattern(s, std::move(blocks)); }

const CutStore& Pricer::cuts() const { return *impl_->store; }
CutStore& Pricer::cuts() { return *impl_->store; }
const PricingOptions& Pricer::options() const { return impl_->opt; }

PricingOutcome price_surgeon(const Instance& inst, int s, std::span<const double> lambda, double mu,
                             const BranchHistory& history, CutStore& store, CutKind kind) {
  PricingOptions po;
  po.cost = CostModel::make(inst, ColumnRule::Bilevel);
  po.cut_kind = kind;
  po.use_lcr = true;
  // Non-owning view of the caller's store.
  std::shared_ptr<CutStore> view(&store, [](CutStore*) {});
  Pricer pricer(inst, po, view);
  return pricer.price(s, lambda, mu, history);
}

}  // namespace ors
