#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ors/leader_model.hpp"
#include "ors/optkern.hpp"

using namespace ors;
using namespace ors::optkern;

namespace {

MipProblem knapsack(const std::vector<int>& w, const std::vector<int>& v, int cap) {
  MipProblem m;
  m.lp.set_sense(Sense::Maximize);
  Constraint row;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int j = m.lp.add_variable(0, 1, v[i]);
    row.add(j, w[i]);
    m.binaries.push_back(j);
  }
  row.rhs = cap;
  m.lp.add_constraint(row);
  return m;
}

int brute_knapsack(const std::vector<int>& w, const std::vector<int>& v, int cap) {
  int best = 0;
  const int n = static_cast<int>(w.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    int tw = 0, tv = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        tw += w[static_cast<std::size_t>(i)];
        tv += v[static_cast<std::size_t>(i)];
      }
    }
    if (tw <= cap) best = std::max(best, tv);
  }
  return best;
}

}  // namespace

TEST_CASE("single row LP and its dual") {
  LinearProgram lp;
  const int x = lp.add_variable(0, 10, -1);
  Constraint c;
  c.add(x, 1);
  c.rhs = 3;
  lp.add_constraint(c);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-3));
  CHECK(s.duals[0] == doctest::Approx(-1));
}

TEST_CASE("infeasible LP") {
  LinearProgram lp;
  const int x = lp.add_variable(0, kInf, 0);
  Constraint a, b;
  a.add(x, 1);
  a.rhs = 1;
  b.add(x, 1);
  b.sense = RowSense::GreaterEqual;
  b.rhs = 2;
  lp.add_constraint(a);
  lp.add_constraint(b);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded LP") {
  LinearProgram lp;
  const int x = lp.add_variable(0, kInf, -1);
  Constraint a;
  a.add(x, -1);
  a.rhs = 1;
  lp.add_constraint(a);
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("random LPs: feasibility, dual signs, complementary slackness, duality") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 9);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int m = 2 + static_cast<int>(rng() % 5);
    LinearProgram lp;
    for (int j = 0; j < n; ++j) lp.add_variable(0, 1 + static_cast<double>(rng() % 4), coef(rng));
    for (int i = 0; i < m; ++i) {
      Constraint c;
      for (int j = 0; j < n; ++j) c.add(j, coef(rng));
      const int kind = static_cast<int>(rng() % 3);
      c.sense = kind == 0 ? RowSense::LessEqual : (kind == 1 ? RowSense::GreaterEqual : RowSense::Equal);
      // x = 0 is always feasible, so the LP is never infeasible.
      c.rhs = kind == 0 ? static_cast<double>(rng() % 10) : (kind == 1 ? -static_cast<double>(rng() % 10) : 0.0);
      lp.add_constraint(c);
    }
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    for (int i = 0; i < m; ++i) {
      const Constraint& c = lp.constraint(i);
      const double act = c.activity(s.primal);
      CHECK(c.violation(s.primal) <= 1e-7);
      const double y = s.duals[static_cast<std::size_t>(i)];
      if (c.sense == RowSense::LessEqual) CHECK(y <= 1e-9);
      if (c.sense == RowSense::GreaterEqual) CHECK(y >= -1e-9);
      CHECK(std::abs(y * (act - c.rhs)) <= 1e-7);
    }
    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) dual_obj += s.duals[static_cast<std::size_t>(i)] * lp.constraint(i).rhs;
    for (int j = 0; j < n; ++j) {
      double d = lp.variable(j).cost;
      for (int i = 0; i < m; ++i) {
        const Constraint& c = lp.constraint(i);
        for (std::size_t k = 0; k < c.index.size(); ++k) {
          if (c.index[k] == j) d -= s.duals[static_cast<std::size_t>(i)] * c.value[k];
        }
      }
      const double x = s.primal[static_cast<std::size_t>(j)];
      if (d > 1e-7) CHECK(x == doctest::Approx(lp.variable(j).lower));
      if (d < -1e-7) CHECK(x == doctest::Approx(lp.variable(j).upper));
      dual_obj += d * x;
    }
    CHECK(s.objective == doctest::Approx(dual_obj).epsilon(1e-9));
  }
}

TEST_CASE("incremental solver matches cold solves") {
  LinearProgram lp;
  for (int j = 0; j < 4; ++j) lp.add_variable(0, 1, -1.0 - j);
  Constraint c;
  for (int j = 0; j < 4; ++j) c.add(j, 1.0 + j);
  c.rhs = 5;
  lp.add_constraint(c);
  SimplexSolver solver(lp);
  const LpSolution a = solver.solve();
  CHECK(a.objective == doctest::Approx(solve_lp(lp).objective));

  const std::vector<int> rows{0};
  const std::vector<double> vals{1.0};
  solver.add_column(0, 2, -3, rows, vals);
  lp.add_variable(0, 2, -3);
  Constraint c2 = lp.constraint(0);
  c2.add(4, 1.0);
  LinearProgram lp2;
  for (int j = 0; j < 5; ++j) lp2.add_variable(lp.variable(j).lower, lp.variable(j).upper, lp.variable(j).cost);
  lp2.add_constraint(c2);
  CHECK(solver.solve().objective == doctest::Approx(solve_lp(lp2).objective));

  solver.set_bounds(4, 0, 0);
  lp2.set_bounds(4, 0, 0);
  const Basis basis = solver.basis();
  CHECK(solver.solve().objective == doctest::Approx(solve_lp(lp2).objective));
  solver.set_basis(basis);
  CHECK(solver.solve().objective == doctest::Approx(solve_lp(lp2).objective));
}

TEST_CASE("0-1 knapsack and a lazy cut") {
  MipProblem m = knapsack({2, 3}, {3, 4}, 3);
  const MipResult r = solve_mip(m);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.objective == doctest::Approx(4));

  long calls = 0;
  m.callback = [&](std::span<const double> x) {
    ++calls;
    std::vector<Constraint> cuts;
    if (x[1] > 0.5) {
      Constraint c;
      c.add(1, 1);
      c.rhs = 0;
      cuts.push_back(c);
    }
    return cuts;
  };
  const MipResult rc = solve_mip(m);
  REQUIRE(rc.status == MipStatus::Optimal);
  CHECK(rc.objective == doctest::Approx(3));
  CHECK(calls >= 2);
  CHECK(rc.stats.lazy_cuts == 1);
}

TEST_CASE("random knapsacks match enumeration") {
  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 15);
    std::vector<int> w, v;
    int total = 0;
    for (int i = 0; i < n; ++i) {
      w.push_back(1 + static_cast<int>(rng() % 20));
      v.push_back(1 + static_cast<int>(rng() % 30));
      total += w.back();
    }
    const int cap = static_cast<int>(rng() % static_cast<std::uint64_t>(total + 1));
    MipProblem m = knapsack(w, v, cap);
    MipOptions o;
    o.objective_granularity = 1;
    const MipResult r = solve_mip(m, o);
    REQUIRE(r.status == MipStatus::Optimal);
    CHECK(std::lround(r.objective) == brute_knapsack(w, v, cap));

    // An accepting callback changes nothing.
    m.callback = [](std::span<const double>) { return std::vector<Constraint>{}; };
    CHECK(std::lround(solve_mip(m, o).objective) == brute_knapsack(w, v, cap));
  }
}

TEST_CASE("bound never crosses the incumbent") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> w, v;
    for (int i = 0; i < 14; ++i) {
      w.push_back(3 + static_cast<int>(rng() % 20));
      v.push_back(3 + static_cast<int>(rng() % 20));
    }
    const MipResult r = solve_mip(knapsack(w, v, 60));
    for (const MipTracePoint& tp : r.stats.trace) CHECK(tp.bound >= tp.incumbent - 1e-6);
    CHECK(r.bound >= r.objective - 1e-6);
  }
}

TEST_CASE("time and node limits") {
  std::mt19937_64 rng(4);
  std::vector<int> w, v;
  for (int i = 0; i < 40; ++i) {
    w.push_back(20 + static_cast<int>(rng() % 30));
    v.push_back(20 + static_cast<int>(rng() % 30));
  }
  MipOptions o;
  o.node_limit = 3;
  const MipResult r = solve_mip(knapsack(w, v, 500), o);
  CHECK(r.status == MipStatus::NodeLimit);
  CHECK(r.bound >= r.objective - 1e-6);
}

TEST_CASE("T1 leader model without callback") {
  const Instance t1 = oracle::t1();
  const LeaderModel m = build_leader_model(t1, true);
  const MipResult r = solve_mip(m.mip);
  REQUIRE(r.status == MipStatus::Optimal);
  const Assignment a = m.decode(t1, r.incumbent);
  CHECK(leader_objective(t1, a) == Rational(2));
  CHECK(r.objective == doctest::Approx(2));
  CHECK(check_single_level_feasibility(t1, a).ok);
}
