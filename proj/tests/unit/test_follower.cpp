#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "ors/follower.hpp"

using namespace ors;

namespace {

int block_of(const Instance& inst, int day, int start, int length) {
  for (const Block& b : inst.blocks()) {
    if (b.day == day && b.start == start && b.length == length) return b.id;
  }
  return -1;
}

Instance random_single_surgeon(std::mt19937_64& rng, int patients) {
  InstanceSpec spec;
  spec.days = 3;
  spec.v_day = 1;
  spec.v_horizon = 3;
  spec.alpha = static_cast<std::int64_t>(rng() % 3);
  spec.beta = static_cast<std::int64_t>(1 + rng() % 2);
  SurgeonSpec s{0, {}};
  for (int p = 0; p < patients; ++p) {
    s.patients.push_back({p, 1 + static_cast<int>(rng() % 14), 1 + static_cast<int>(rng() % 4),
                          1 + static_cast<int>(rng() % 4)});
  }
  spec.surgeons.push_back(s);
  return Instance(spec);
}

std::vector<int> random_blocks(std::mt19937_64& rng, const Instance& inst, int k) {
  std::vector<int> blocks;
  for (int d = 0; d < k; ++d) {
    const auto& day = inst.blocks_on_day(d);
    blocks.push_back(day[rng() % day.size()]);
  }
  return blocks;
}

void check_capacity(const Instance& inst, const FollowerResult& r, std::span<const int> blocks) {
  std::map<int, int> load;
  std::set<int> seen;
  for (const auto& [p, b] : r.x) {
    CHECK(seen.insert(p).second);
    CHECK(std::find(blocks.begin(), blocks.end(), b) != blocks.end());
    load[b] += inst.patient(p).duration;
  }
  for (const auto& [b, l] : load) CHECK(l <= inst.block(b).length);
}

}  // namespace

TEST_CASE("T1 and T2 follower examples") {
  const Instance t1 = oracle::t1();
  const std::vector<int> b16{block_of(t1, 0, 0, 16)};
  const FollowerResult r = solve_follower(t1, 0, b16, FollowerMode::Pure);
  CHECK(r.f_prime == 4);
  CHECK(r.delta == 16);
  CHECK(r.x.size() == 2);

  const FollowerResult none = solve_follower(t1, 0, {}, FollowerMode::Pure);
  CHECK(none.f_prime == 0);
  CHECK(none.delta == 0);
  CHECK(none.rho == 3);
  CHECK(none.x.empty());

  const Instance t2 = oracle::t2();
  const std::vector<int> t2b16{block_of(t2, 0, 0, 16)};
  for (FollowerMode mode : {FollowerMode::Pure, FollowerMode::OptimisticCompact, FollowerMode::OptimisticSubproblem}) {
    for (FollowerEngine engine : {FollowerEngine::Packing, FollowerEngine::Mip}) {
      const FollowerResult p = solve_follower(t2, 0, t2b16, mode, engine);
      CHECK(p.f_prime == 3);
      REQUIRE(p.x.size() == 1);
      CHECK(p.x[0].first == 1);
    }
  }
  const std::vector<int> t2b24{block_of(t2, 0, 0, 24)};
  CHECK(solve_follower(t2, 0, t2b24, FollowerMode::Pure).f_prime == 4);
}

TEST_CASE("bilevel feasibility check") {
  const Instance t1 = oracle::t1();
  CHECK(is_bilevel_feasible(t1, oracle::solve(t1).bilevel_solution));
  CHECK(is_bilevel_feasible(t1, Assignment(t1)));

  const Instance t2 = oracle::t2();
  Assignment a(t2);
  const int b16 = block_of(t2, 0, 0, 16);
  a.assign_block(0, b16);
  a.assign_patient(0, b16);
  const auto checks = check_bilevel_feasibility(t2, a);
  REQUIRE(checks.size() == 1);
  CHECK_FALSE(checks[0].feasible);
  CHECK(checks[0].f == 1);
  CHECK(checks[0].f_prime == 3);
  CHECK_FALSE(is_bilevel_feasible(t2, a));
}

TEST_CASE("follower big-M") {
  const Instance t1 = oracle::t1();
  CHECK(follower_big_m(t1, 0) == 4);
  CHECK(follower_big_m(t1, 1) == 2);
  InstanceSpec spec = t1.spec();
  spec.surgeons.push_back({2, {}});
  CHECK(follower_big_m(Instance(spec), 2) == 0);
}

TEST_CASE("follower solver against enumeration") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const int k = static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % (k == 3 ? 9 : 12));
    const Instance inst = random_single_surgeon(rng, n);
    const std::vector<int> blocks = random_blocks(rng, inst, k);
    const auto plans = oracle::all_plans(inst, 0, blocks);
    std::int64_t fmax = 0;
    for (const auto& p : plans) fmax = std::max(fmax, p.f);
    Rational best_opt{0}, best_any{0};
    bool first_opt = true, first_any = true;
    for (const auto& p : plans) {
      const Rational c = oracle::plan_cost(inst, 0, p);
      if (first_any || c < best_any) best_any = c;
      first_any = false;
      if (p.f == fmax && (first_opt || c < best_opt)) {
        best_opt = c;
        first_opt = false;
      }
    }
    auto cost_of = [&](const FollowerResult& r) {
      return inst.beta() * Rational(r.rho) - inst.alpha() * Rational(r.delta);
    };

    for (FollowerEngine engine : {FollowerEngine::Packing, FollowerEngine::Mip}) {
      const FollowerResult pure = solve_follower(inst, 0, blocks, FollowerMode::Pure, engine);
      const FollowerResult oc = solve_follower(inst, 0, blocks, FollowerMode::OptimisticCompact, engine);
      const FollowerResult os = solve_follower(inst, 0, blocks, FollowerMode::OptimisticSubproblem, engine);
      CHECK(pure.f_prime == fmax);
      CHECK(oc.f_prime == fmax);
      CHECK(os.f_prime == fmax);
      CHECK(cost_of(oc) == best_opt);
      CHECK(cost_of(os) == best_opt);
      check_capacity(inst, pure, blocks);
      check_capacity(inst, os, blocks);
    }
    const FollowerResult lb = leader_best_packing(inst, 0, blocks);
    CHECK(cost_of(lb) == best_any);
    check_capacity(inst, lb, blocks);
  }
}

TEST_CASE("adding a block never lowers the follower optimum") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = random_single_surgeon(rng, 1 + static_cast<int>(rng() % 12));
    std::vector<int> blocks = random_blocks(rng, inst, 3);
    std::int64_t prev = -1;
    for (std::size_t k = 0; k <= blocks.size(); ++k) {
      const std::vector<int> sub(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(k));
      const std::int64_t f = solve_follower(inst, 0, sub, FollowerMode::Pure).f_prime;
      CHECK(f >= prev);
      prev = f;
    }
  }
}

TEST_CASE("multiple knapsack") {
  const std::vector<PackItem> items{{5, 10}, {4, 7}, {3, 5}, {6, 0}};
  const std::vector<int> caps{8, 4};
  const PackResult r = solve_multiple_knapsack(items, caps);
  CHECK(r.value == 22);
  CHECK(r.bin_of[3] == -1);
  const PackResult empty = solve_multiple_knapsack(items, std::vector<int>{});
  CHECK(empty.value == 0);
}
