#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "ors/follower.hpp"
#include "ors/inith.hpp"

using namespace ors;

namespace {

std::vector<CandidateAssignment> all_candidates(const Instance& inst) {
  std::vector<CandidateAssignment> out;
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    for (const Block& b : inst.blocks()) {
      CandidateAssignment c;
      c.surgeon = s;
      c.block = b.id;
      c.patients = knapsack_per_length(inst, s, inst.patients_of(s), b.length);
      for (int p : c.patients) {
        c.delta_bar += inst.patient(p).duration;
        c.rho_bar += inst.patient(p).prio_leader;
      }
      c.value = inst.alpha() * c.delta_bar + inst.beta() * c.rho_bar;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("per-length knapsack") {
  const Instance t1 = oracle::t1();
  const std::vector<int> pool{0, 1};
  CHECK(knapsack_per_length(t1, 0, pool, 16) == std::vector<int>{0, 1});
  CHECK(knapsack_per_length(t1, 0, pool, 8) == std::vector<int>{1});
  CHECK(knapsack_per_length(t1, 0, pool, 0).empty());
  const std::vector<int> big{2};
  CHECK(knapsack_per_length(t1, 1, big, 8).empty());
  CHECK(knapsack_per_length(t1, 0, std::vector<int>{}, 32).empty());
}

TEST_CASE("allocation step") {
  const Instance t1 = oracle::t1();
  const auto cands = all_candidates(t1);
  const BlockSchedule empty(2);
  const auto chosen = allocate_step(t1, cands, empty);
  CHECK(chosen.size() == 2);
  std::set<int> surgeons;
  Assignment a(t1);
  for (int i : chosen) {
    surgeons.insert(cands[static_cast<std::size_t>(i)].surgeon);
    a.assign_block(cands[static_cast<std::size_t>(i)].surgeon, cands[static_cast<std::size_t>(i)].block);
  }
  CHECK(surgeons.size() == 2);
  CHECK(check_single_level_feasibility(t1, a).ok);

  int full = -1;
  for (const Block& b : t1.blocks()) {
    if (b.length == 32) full = b.id;
  }
  const BlockSchedule saturated{{full}, {}};
  CHECK(allocate_step(t1, cands, saturated).empty());

  // Equal values, different starts: the earlier block wins.
  std::vector<CandidateAssignment> tie;
  for (const Block& b : t1.blocks()) {
    if (b.length != 8) continue;
    CandidateAssignment c;
    c.surgeon = 0;
    c.block = b.id;
    c.patients = {1};
    c.delta_bar = 6;
    c.rho_bar = 1;
    c.value = 7;
    tie.push_back(c);
  }
  std::reverse(tie.begin(), tie.end());
  const auto pick = allocate_step(t1, tie, BlockSchedule(2));
  REQUIRE(pick.size() == 1);
  CHECK(t1.block(tie[static_cast<std::size_t>(pick[0])].block).start == 0);
}

TEST_CASE("initial heuristic on T1") {
  const Instance t1 = oracle::t1();
  const HeuristicResult h = initial_heuristic(t1);
  CHECK(is_bilevel_feasible(t1, h.assignment));
  CHECK(h.F <= Rational(38));
  CHECK(h.F == leader_objective(t1, h.assignment));
  CHECK(h.patterns.size() == 2);
  CHECK(h.iterations <= t1.num_surgeons() * t1.v_horizon() + 1);

  const auto feasible = oracle::all_bilevel_feasible(t1);
  for (CutKind kind : {CutKind::Objective, CutKind::Assignment}) {
    for (const LazyCut& c : initial_heuristic(t1, kind).cuts) {
      CHECK(c.kind == kind);
      for (const Assignment& a : feasible) CHECK(satisfied(t1, c, a));
    }
  }
}

TEST_CASE("initial heuristic without patients") {
  InstanceSpec spec = oracle::t1().spec();
  for (auto& s : spec.surgeons) s.patients.clear();
  spec.alpha = 2;
  const Instance inst(spec);
  const HeuristicResult h = initial_heuristic(inst);
  CHECK(h.F == Rational(64));
  for (int p = 0; p < inst.num_patients(); ++p) CHECK_FALSE(h.assignment.scheduled(p));
}

TEST_CASE("initial heuristic never beats the optimum") {
  for (const Instance& inst : oracle::small_suite(30)) {
    const HeuristicResult h = initial_heuristic(inst);
    CHECK(is_bilevel_feasible(inst, h.assignment));
    CHECK(check_single_level_feasibility(inst, h.assignment).ok);
    CHECK(h.F >= oracle::solve(inst).bilevel);
    CHECK(h.iterations <= inst.num_surgeons() * inst.v_horizon() + 1);
  }
}
