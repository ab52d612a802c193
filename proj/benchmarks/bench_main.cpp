#include <benchmark/benchmark.h>

#include <random>

#include "ors/bnp.hpp"
#include "ors/compact.hpp"
#include "ors/follower.hpp"
#include "ors/instgen.hpp"
#include "ors/optkern.hpp"

using namespace ors;

namespace {

// Dense random LP with n variables and n/2 rows, bounded and feasible at 0.
optkern::LinearProgram random_lp(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  optkern::LinearProgram lp;
  lp.set_sense(optkern::Sense::Maximize);
  for (int j = 0; j < n; ++j) lp.add_variable(0.0, 10.0, u(rng));
  for (int i = 0; i < n / 2; ++i) {
    optkern::Constraint row;
    for (int j = 0; j < n; ++j) row.add(j, u(rng));
    row.rhs = 0.25 * n;
    lp.add_constraint(row);
  }
  return lp;
}

Instance gen(int surgeons, int days, Rational lf, std::uint64_t seed) {
  GenParams g;
  g.surgeons = surgeons;
  g.days = days;
  g.load_factor = lf;
  g.seed = seed;
  return generate_instance(g);
}

void BM_SimplexDense(benchmark::State& state) {
  const auto lp = random_lp(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(optkern::solve_lp(lp).objective);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimplexDense)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_FollowerPacking(benchmark::State& state) {
  const Instance inst = gen(4, 5, 2, 11);
  std::vector<int> blocks;
  for (int d = 0; d < inst.days(); ++d) blocks.push_back(inst.blocks_on_day(d).back());
  const auto engine = state.range(0) == 0 ? FollowerEngine::Packing : FollowerEngine::Mip;
  for (auto _ : state) {
    for (int s = 0; s < inst.num_surgeons(); ++s) {
      benchmark::DoNotOptimize(solve_follower(inst, s, blocks, FollowerMode::OptimisticSubproblem, engine).f_prime);
    }
  }
  state.SetLabel(state.range(0) == 0 ? "packing" : "mip");
}
BENCHMARK(BM_FollowerPacking)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_BranchAndPrice(benchmark::State& state) {
  const Instance inst = gen(static_cast<int>(state.range(0)), 2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_bnp(inst).stats.F);
}
BENCHMARK(BM_BranchAndPrice)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Compact(benchmark::State& state) {
  const Instance inst = gen(3, 1, Rational(5, 4), 5);
  CompactOptions o;
  o.cut_kind = state.range(0) == 0 ? CutKind::Objective : CutKind::Assignment;
  for (auto _ : state) benchmark::DoNotOptimize(solve_compact(inst, o).stats.F);
  state.SetLabel(state.range(0) == 0 ? "olc" : "alc");
}
BENCHMARK(BM_Compact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
