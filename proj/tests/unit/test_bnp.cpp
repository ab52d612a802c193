#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ors/bnp.hpp"
#include "ors/follower.hpp"

using namespace ors;

namespace {

int block_of(const Instance& inst, int day, int start, int length) {
  for (const Block& b : inst.blocks()) {
    if (b.day == day && b.start == start && b.length == length) return b.id;
  }
  return -1;
}

Pricer make_pricer(const Instance& inst, ColumnRule rule = ColumnRule::Bilevel) {
  PricingOptions po;
  po.cost = CostModel::make(inst, rule);
  return Pricer(inst, po, std::make_shared<CutStore>(inst.num_surgeons()));
}

std::vector<Pattern> trivial_pool(const Instance& inst, Pricer& pricer) {
  std::vector<Pattern> pool;
  for (int s = 0; s < inst.num_surgeons(); ++s) pool.push_back(*pricer.default_pattern(s, {}));
  return pool;
}

}  // namespace

TEST_CASE("restricted master on T1") {
  const Instance t1 = oracle::t1();
  Pricer pricer = make_pricer(t1);
  const CostModel cost = CostModel::make(t1, ColumnRule::Bilevel);
  const auto pool = trivial_pool(t1, pricer);
  const RmpSolution trivial = solve_rmp(t1, pool, {}, cost);
  REQUIRE(trivial.status == optkern::LpStatus::Optimal);
  CHECK(trivial.objective == doctest::Approx(38));
  for (double l : trivial.lambda) CHECK(l == doctest::Approx(0));

  const Assignment best = oracle::solve(t1).bilevel_solution;
  std::vector<Pattern> two;
  for (int s = 0; s < 2; ++s) two.push_back(pricer.make_pattern(s, best.blocks_of(s)));
  const RmpSolution r = solve_rmp(t1, two, {}, cost);
  REQUIRE(r.status == optkern::LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2));
  for (double th : r.theta) CHECK(th == doctest::Approx(1));
}

TEST_CASE("pricing examples") {
  InstanceSpec spec = oracle::t1().spec();
  spec.surgeons.push_back({2, {}});
  const Instance inst(spec);
  Pricer pricer = make_pricer(inst);
  const std::vector<double> zero(static_cast<std::size_t>(inst.num_time_points()), 0.0);
  CHECK_FALSE(pricer.price(2, zero, 0.0, {}).pattern.has_value());

  const Instance t1 = oracle::t1();
  Pricer p1 = make_pricer(t1);
  const auto pool = trivial_pool(t1, p1);
  const RmpSolution rmp = solve_rmp(t1, pool, {}, CostModel::make(t1, ColumnRule::Bilevel));
  const PricingOutcome out = p1.price(1, rmp.lambda, rmp.mu[1], {});
  REQUIRE(out.pattern.has_value());
  CHECK(out.pattern->x_detail.size() == 1);
  CHECK(out.pattern->x_detail[0].first == 2);
  CHECK(out.reduced_cost == doctest::Approx(oracle::best_reduced_cost(t1, 1, rmp.lambda, rmp.mu[1], {})));
}

TEST_CASE("block weights count every covered grid point") {
  const Instance t1 = oracle::t1();
  Pricer pricer = make_pricer(t1);
  // Make only the 16-block at start 0 attractive: lambda penalises slots 16 and 24.
  std::vector<double> lambda(4, 0.0);
  lambda[2] = -100;
  lambda[3] = -100;
  lambda[0] = -1;
  lambda[1] = -2;
  const PricingOutcome out = pricer.price(0, lambda, 40.0, {});
  REQUIRE(out.pattern.has_value());
  CHECK(out.pattern->blocks == std::vector<int>{block_of(t1, 0, 0, 16)});
  // 16 slots scheduled, nothing omitted: cost = -16; duals -1 - 2 + 40.
  CHECK(out.reduced_cost == doctest::Approx(-3 + 40 + 16));
}

TEST_CASE("pricing matches enumeration under random duals and fixings") {
  std::mt19937_64 rng(77);
  for (const Instance& inst : oracle::small_suite(12)) {
    Pricer pricer = make_pricer(inst);
    for (int rep = 0; rep < 15; ++rep) {
      std::vector<double> lambda(static_cast<std::size_t>(inst.num_time_points()));
      for (double& l : lambda) l = -static_cast<double>(rng() % 8) * (rng() % 2 ? 1.0 : 0.25);
      const double mu = static_cast<double>(rng() % 40) - 10.0;
      const int s = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_surgeons()));
      BranchHistory h;
      std::vector<std::tuple<int, int, int>> fix;
      if (rng() % 2) {
        const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_blocks()));
        const int v = static_cast<int>(rng() % 2);
        h.push_back({s, b, v});
        fix.emplace_back(s, b, v);
      }
      const double expect = oracle::best_reduced_cost(inst, s, lambda, mu, fix);
      const PricingOutcome out = pricer.price(s, lambda, mu, h);
      INFO("surgeon " << s << " expect " << expect << " got " << out.reduced_cost);
      if (expect > 1e-6) {
        REQUIRE(out.pattern.has_value());
        CHECK(out.reduced_cost == doctest::Approx(expect));
        const Pattern& k = *out.pattern;
        CHECK(admissible(k, h));
        CHECK(k.f == oracle::follower_optimum(inst, s, k.blocks));
      } else {
        CHECK_FALSE(out.pattern.has_value());
      }
    }
  }
}

TEST_CASE("column generation on T1") {
  const Instance t1 = oracle::t1();
  for (bool multi : {true, false}) {
    Pricer pricer = make_pricer(t1);
    ColumnPool pool;
    for (auto& k : trivial_pool(t1, pricer)) pool.add(k);
    CgOptions o;
    o.multi_pattern = multi;
    const CgResult r = run_column_generation(t1, pool, {}, pricer, o);
    CHECK(r.converged);
    CHECK(r.lp_bound == doctest::Approx(2));
    CHECK(r.columns_added >= 1);

    const CgResult again = run_column_generation(t1, pool, {}, pricer, o);
    CHECK(again.converged);
    CHECK(again.columns_added == 0);
    CHECK(again.lp_bound == doctest::Approx(2));
  }
}

TEST_CASE("dual certificate and column feasibility at convergence") {
  for (const Instance& inst : oracle::small_suite(10)) {
    Pricer pricer = make_pricer(inst);
    ColumnPool pool;
    for (auto& k : trivial_pool(inst, pricer)) pool.add(k);
    const CgResult r = run_column_generation(inst, pool, {}, pricer, {});
    REQUIRE(r.converged);
    const CostModel cost = CostModel::make(inst, ColumnRule::Bilevel);
    for (const Pattern& k : pool.items()) {
      double dual = r.rmp.mu[static_cast<std::size_t>(k.surgeon)];
      for (int b : k.blocks) {
        for (int pt : inst.covering_points(b)) dual += r.rmp.lambda[static_cast<std::size_t>(pt)];
      }
      CHECK(dual <= to_double(cost.cost(inst, k)) + 1e-6);
      CHECK(k.f == oracle::follower_optimum(inst, k.surgeon, k.blocks));
    }
    for (double l : r.rmp.lambda) CHECK(l <= 1e-9);
  }
}

TEST_CASE("branch variable selection") {
  const std::vector<FractionalY> a{{0, 1, 0.5}, {0, 2, 0.3}, {1, 0, 0.9}};
  CHECK(select_branch_variable(a) == std::make_pair(0, 1));
  const std::vector<FractionalY> b{{1, 3, 0.6}, {0, 4, 0.4}};
  CHECK(select_branch_variable(b) == std::make_pair(0, 4));
  const std::vector<FractionalY> c{{0, 1, 1.0}, {0, 2, 0.0}};
  CHECK_THROWS_AS(select_branch_variable(c), std::logic_error);
}

TEST_CASE("default patterns") {
  const Instance t1 = oracle::t1();
  Pricer pricer = make_pricer(t1);
  const auto empty = pricer.default_pattern(0, {});
  REQUIRE(empty.has_value());
  CHECK(empty->blocks.empty());
  CHECK(empty->delta == 0);
  CHECK(empty->rho == 3);

  const int b16 = block_of(t1, 0, 0, 16);
  const auto fixed = pricer.default_pattern(0, {{0, b16, 1}});
  REQUIRE(fixed.has_value());
  CHECK(fixed->blocks == std::vector<int>{b16});
  CHECK(fixed->delta == 16);
  CHECK(fixed->x_detail.size() == 2);

  const BranchHistory too_many{{0, b16, 1}, {0, block_of(t1, 0, 16, 16), 1}};
  CHECK_FALSE(pricer.default_pattern(0, too_many).has_value());
}

TEST_CASE("admissibility and pool") {
  Pattern k;
  k.surgeon = 0;
  k.blocks = {2, 5};
  CHECK(admissible(k, {}));
  CHECK(admissible(k, {{0, 2, 1}}));
  CHECK_FALSE(admissible(k, {{0, 3, 1}}));
  CHECK_FALSE(admissible(k, {{0, 5, 0}}));
  CHECK(admissible(k, {{1, 5, 0}, {1, 7, 1}}));

  ColumnPool pool;
  bool added = false;
  CHECK(pool.add(k, &added) == 0);
  CHECK(added);
  CHECK(pool.add(k, &added) == 0);
  CHECK_FALSE(added);
  k.surgeon = 1;
  CHECK(pool.add(k, &added) == 1);
  CHECK(pool.size() == 2);
}

TEST_CASE("master heuristic") {
  const Instance t1 = oracle::t1();
  Pricer pricer = make_pricer(t1);
  const CostModel cost = CostModel::make(t1, ColumnRule::Bilevel);
  std::vector<Pattern> pool = trivial_pool(t1, pricer);
  const Assignment best = oracle::solve(t1).bilevel_solution;
  for (int s = 0; s < 2; ++s) pool.push_back(pricer.make_pattern(s, best.blocks_of(s)));
  const auto a = master_heuristic(t1, pool, cost);
  REQUIRE(a.has_value());
  CHECK(leader_objective(t1, *a) == Rational(2));

  // Every non-empty pair collides in the single room.
  const int full = block_of(t1, 0, 0, 32);
  std::vector<Pattern> clash = trivial_pool(t1, pricer);
  clash.push_back(pricer.make_pattern(0, {full}));
  clash.push_back(pricer.make_pattern(1, {full}));
  const auto c = master_heuristic(t1, clash, cost);
  REQUIRE(c.has_value());
  CHECK(check_single_level_feasibility(t1, *c).ok);
  CHECK(leader_objective(t1, *c) < Rational(38));
}

TEST_CASE("branch-and-price on T1") {
  const Instance t1 = oracle::t1();
  for (bool heur : {false, true}) {
    BnpOptions o;
    o.use_initial_heuristic = heur;
    const BnpResult r = solve_bnp(t1, o);
    CHECK(r.stats.optimal());
    CHECK(r.stats.F == Rational(2));
    CHECK(r.stats.n_nodes == 1);
    CHECK(r.root_bound == doctest::Approx(2));
    CHECK(is_bilevel_feasible(t1, r.assignment));
    if (heur) CHECK(r.incumbent_before_root);
    for (const Pattern& k : r.pool) CHECK(k.f == oracle::follower_optimum(t1, k.surgeon, k.blocks));
  }
}

TEST_CASE("branch-and-price on small instances") {
  for (const Instance& inst : oracle::small_suite(12)) {
    const auto opt = oracle::solve(inst);
    BnpOptions o;
    std::vector<NodeTrace> nodes;
    o.on_node = [&](const NodeTrace& n) { nodes.push_back(n); };
    o.on_incumbent = [&](const Assignment& a, const Rational& F) {
      CHECK(is_bilevel_feasible(inst, a));
      CHECK(leader_objective(inst, a) == F);
    };
    const BnpResult r = solve_bnp(inst, o);
    CHECK(r.stats.optimal());
    CHECK(r.stats.F == opt.bilevel);
    for (const NodeTrace& n : nodes) {
      if (!n.branch) continue;
      CHECK(n.branch->surgeon >= 0);
      CHECK(n.branch->surgeon < inst.num_surgeons());
      CHECK(n.branch->block < inst.num_blocks());
    }
    // Same run twice gives the same answer.
    const BnpResult again = solve_bnp(inst, o);
    CHECK(again.assignment == r.assignment);
    CHECK(again.stats.n_nodes == r.stats.n_nodes);
  }
}

TEST_CASE("other column rules match enumeration") {
  for (const Instance& inst : oracle::small_suite(9)) {
    const auto opt = oracle::solve(inst);
    BnpOptions o;
    o.use_initial_heuristic = false;
    o.rule = ColumnRule::Centralized;
    const BnpResult c = solve_bnp(inst, o);
    CHECK(c.stats.optimal());
    CHECK(leader_objective(inst, c.assignment) == opt.central);

    o.rule = ColumnRule::Decentralized;
    for (Tiebreak t : {Tiebreak::LeaderBest, Tiebreak::LeaderWorst}) {
      o.tiebreak = t;
      const BnpResult d = solve_bnp(inst, o);
      CHECK(d.stats.optimal());
      std::int64_t fsum = 0;
      for (int s = 0; s < inst.num_surgeons(); ++s) fsum += follower_objective(inst, s, d.assignment);
      CHECK(fsum == opt.dec_sum_f);
      CHECK(leader_objective(inst, d.assignment) == (t == Tiebreak::LeaderBest ? opt.dec_best : opt.dec_worst));
    }
  }
}
