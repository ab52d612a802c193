#include "doctest.h"
#include "oracle.hpp"
#include "ors/analysis.hpp"
#include "ors/compact.hpp"
#include "ors/follower.hpp"

using namespace ors;

TEST_CASE("T1 with both cut kinds") {
  const Instance t1 = oracle::t1();
  for (CutKind kind : {CutKind::Objective, CutKind::Assignment}) {
    CompactOptions o;
    o.cut_kind = kind;
    const SolveResult r = solve_compact(t1, o);
    CHECK(r.stats.optimal());
    CHECK(r.stats.F == Rational(2));
    CHECK(leader_objective(t1, r.assignment) == Rational(2));
    CHECK(is_bilevel_feasible(t1, r.assignment));
    CHECK(r.stats.F_lpr <= 2.0 + 1e-9);
  }
}

TEST_CASE("conflicting priorities move the optimum away from the centralised one") {
  const Instance t2 = oracle::t2({16});
  const auto opt = oracle::solve(t2);
  CHECK(opt.bilevel == Rational(26));
  CHECK(opt.central == Rational(21));
  for (CutKind kind : {CutKind::Objective, CutKind::Assignment}) {
    CompactOptions o;
    o.cut_kind = kind;
    const SolveResult r = solve_compact(t2, o);
    CHECK(r.stats.optimal());
    CHECK(r.stats.F == opt.bilevel);
    CHECK(r.stats.F != opt.central);
    CHECK(r.stats.n_lcs >= 1);
    CHECK(r.stats.n_cbs >= 1);
  }
  // With a 24-slot block available both patients fit and the conflict disappears.
  const Instance full = oracle::t2();
  CHECK(solve_compact(full).stats.F == Rational(10));
}

TEST_CASE("every incumbent is bilevel feasible and both scopes agree") {
  const auto suite = oracle::small_suite(8);
  for (const Instance& inst : suite) {
    const Rational expect = oracle::solve(inst).bilevel;
    for (CutScope scope : {CutScope::AllViolated, CutScope::FirstViolated}) {
      for (CutKind kind : {CutKind::Objective, CutKind::Assignment}) {
        CompactOptions o;
        o.cut_kind = kind;
        o.cut_scope = scope;
        Rational last{0};
        bool first = true;
        o.on_incumbent = [&](const Assignment& a, const Rational& F) {
          CHECK(is_bilevel_feasible(inst, a));
          CHECK(leader_objective(inst, a) == F);
          if (!first) CHECK(F < last);
          last = F;
          first = false;
        };
        const SolveResult r = solve_compact(inst, o);
        CHECK(r.stats.optimal());
        CHECK(r.stats.F == expect);
      }
    }
  }
}

TEST_CASE("stats fields") {
  const Instance t2 = oracle::t2({8, 16});
  const SolveResult r = solve_compact(t2);
  CHECK(r.stats.feasible_found);
  CHECK(r.stats.n_nodes >= 1);
  CHECK(r.stats.t_total >= r.stats.t_cb);
  if (r.stats.F_lpr > 0) {
    CHECK(r.stats.gap_root_pct == doctest::Approx(100.0 * (to_double(r.stats.F) - r.stats.F_lpr) / r.stats.F_lpr));
  }
  CHECK(std::string(to_string(CutScope::AllViolated)).size() > 0);
}
