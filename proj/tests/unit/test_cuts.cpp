#include <map>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "ors/bnp.hpp"
#include "ors/compact.hpp"
#include "ors/cuts.hpp"
#include "ors/follower.hpp"

using namespace ors;

namespace {

// Variables laid out as: x(p, b) = p * nb + b, then q(l, w) after.
struct Layout {
  const Instance& inst;
  int nb;
  int base;
  int wmax;

  explicit Layout(const Instance& i) : inst(i), nb(i.num_blocks()), base(i.num_patients() * i.num_blocks()), wmax(0) {
    for (int w : w_bounds(i)) wmax = std::max(wmax, w);
  }
  CutVariables vars() const {
    CutVariables v;
    v.q = [this](int l, int w) { return base + l * (wmax + 1) + w; };
    v.x = [this](int p, int b) { return p * nb + b; };
    for (int b = 0; b < nb; ++b) v.blocks.push_back(b);
    return v;
  }
  std::map<int, double> coefs(const optkern::Constraint& c) const {
    std::map<int, double> m;
    for (std::size_t k = 0; k < c.index.size(); ++k) m[c.index[k]] += c.value[k];
    return m;
  }
};

}  // namespace

TEST_CASE("W_l bounds") {
  const Instance t1 = oracle::t1();
  CHECK(w_bounds(t1) == std::vector<int>{1, 1, 1, 1});

  InstanceSpec spec;
  spec.days = 5;
  spec.slots_per_day = 40;
  spec.lengths = {8};
  spec.starts = {0, 8, 16, 24, 32};
  spec.v_day = 1;
  spec.v_horizon = 5;
  spec.surgeons = {{0, {}}};
  CHECK(w_bounds(Instance(spec)) == std::vector<int>{5});

  spec.v_horizon = 0;
  CHECK(w_bounds(Instance(spec)) == std::vector<int>{0});
}

TEST_CASE("q linkage rows on T1") {
  const Instance t1 = oracle::t1();
  int next = 0;
  std::map<std::pair<int, int>, int> qcol;
  auto q = [&](int l, int w) {
    auto [it, fresh] = qcol.emplace(std::make_pair(l, w), next);
    if (fresh) ++next;
    return it->second;
  };
  auto y = [&](int b) { return 100 + b; };
  const auto rows = build_q_link(t1, q, y);
  CHECK(rows.size() == 8);
  CHECK(qcol.size() == 8);
  for (const auto& r : rows) CHECK(r.sense == optkern::RowSense::Equal);
  // Count row for length 8: q(0,1) - y over the four length-8 blocks.
  CHECK(rows[0].index.size() == 1 + 4);
  CHECK(rows[1].rhs == 1.0);
}

TEST_CASE("O-LC instantiation on T2") {
  const Instance t2 = oracle::t2();
  const Layout lay(t2);
  LazyCut cut;
  cut.kind = CutKind::Objective;
  cut.surgeon = 0;
  cut.profile = {0, 1, 0, 0};
  cut.f_c = 3;
  const auto row = build_olc(t2, cut, lay.vars());
  CHECK(row.sense == optkern::RowSense::GreaterEqual);
  CHECK(row.rhs == doctest::Approx(3 - 4 * 4));
  const auto m = lay.coefs(row);
  const auto v = lay.vars();
  for (int b = 0; b < t2.num_blocks(); ++b) {
    CHECK(m.at(v.x(0, b)) == 1.0);
    CHECK(m.at(v.x(1, b)) == 3.0);
  }
  CHECK(m.at(v.q(0, 0)) == -4.0);
  CHECK(m.at(v.q(1, 1)) == -4.0);
  CHECK(m.at(v.q(2, 0)) == -4.0);
  CHECK(m.at(v.q(3, 0)) == -4.0);

  cut.profile = {0, 2, 0, 0};
  CHECK_THROWS(build_olc(t2, cut, lay.vars()));
}

TEST_CASE("A-LC instantiation on T2") {
  const Instance t2 = oracle::t2();
  const Layout lay(t2);
  LazyCut cut;
  cut.kind = CutKind::Assignment;
  cut.surgeon = 0;
  cut.profile = {0, 1, 0, 0};
  cut.pa_set = {1};
  const auto row = build_alc(t2, cut, lay.vars());
  CHECK(row.rhs == doctest::Approx(1 - 16));
  const auto m = lay.coefs(row);
  const auto v = lay.vars();
  CHECK(m.at(v.x(1, 3)) == 1.0);
  CHECK(m.at(v.x(0, 3)) == -1.0);
}

TEST_CASE("cut evaluation on assignments") {
  const Instance t2 = oracle::t2();
  int b16 = -1, b24 = -1;
  for (const Block& b : t2.blocks()) {
    if (b.start == 0 && b.length == 16) b16 = b.id;
    if (b.start == 0 && b.length == 24) b24 = b.id;
  }
  LazyCut olc;
  olc.kind = CutKind::Objective;
  olc.profile = {0, 1, 0, 0};
  olc.f_c = 3;
  Assignment bad(t2);
  bad.assign_block(0, b16);
  bad.assign_patient(0, b16);
  CHECK_FALSE(satisfied(t2, olc, bad));
  Assignment good(t2);
  good.assign_block(0, b16);
  good.assign_patient(1, b16);
  CHECK(satisfied(t2, olc, good));
  Assignment other(t2);
  other.assign_block(0, b24);
  CHECK(satisfied(t2, olc, other));  // inactive profile

  LazyCut vacuous;
  vacuous.kind = CutKind::Objective;
  vacuous.profile = {0, 0, 0, 0};
  vacuous.f_c = 0;
  CHECK(satisfied(t2, vacuous, Assignment(t2)));

  LazyCut none;
  none.kind = CutKind::Assignment;
  none.profile = {0, 1, 0, 0};
  CHECK_FALSE(satisfied(t2, none, good));
  LazyCut all = none;
  all.pa_set = {0, 1};
  CHECK_FALSE(satisfied(t2, all, good));
  Assignment both(t2);
  both.assign_block(0, b16);
  both.assign_patient(0, b16);
  both.assign_patient(1, b16);
  CHECK(satisfied(t2, all, both));

  CHECK(active_for(t2, olc, Profile{0, 1, 0, 0}));
  CHECK_FALSE(active_for(t2, olc, Profile{0, 0, 1, 0}));
}

TEST_CASE("cut store") {
  CutStore store(2);
  LazyCut c;
  c.surgeon = 0;
  c.profile = {1, 0};
  c.f_c = 2;
  CHECK(store.record(c));
  c.counter = 99;
  CHECK_FALSE(store.record(c));
  CHECK(store.retrieve(0).size() == 1);
  CHECK(store.retrieve(1).empty());
  LazyCut d = c;
  d.f_c = 3;
  CHECK(store.record(d));
  const auto got = store.retrieve(0);
  REQUIRE(got.size() == 2);
  CHECK(got[0].f_c == 2);
  CHECK(got[1].f_c == 3);
  std::ostringstream os;
  store.dump(os);
  CHECK(!os.str().empty());
  store.clear();
  CHECK(store.size() == 0);
}

TEST_CASE("cuts from solver runs are valid and cut off their trigger") {
  for (const Instance& inst : {oracle::t1(), oracle::t2(), oracle::t2({16}), oracle::t2({8, 16})}) {
    const auto feasible = oracle::all_bilevel_feasible(inst);
    REQUIRE(!feasible.empty());
    std::vector<LazyCut> cuts;
    auto hook = [&](const LazyCut& c, const Assignment& trigger) {
      CHECK_FALSE(satisfied(inst, c, trigger));
      cuts.push_back(c);
    };
    for (CutKind kind : {CutKind::Objective, CutKind::Assignment}) {
      CompactOptions co;
      co.cut_kind = kind;
      co.on_cut = hook;
      solve_compact(inst, co);
      BnpOptions bo;
      bo.cut_kind = kind;
      bo.on_cut = hook;
      const BnpResult r = solve_bnp(inst, bo);
      for (int s = 0; s < inst.num_surgeons(); ++s) {
        for (const LazyCut& c : r.cuts->retrieve(s)) {
          cuts.push_back(c);
          CHECK(satisfied(inst, c, r.assignment));
        }
      }
    }
    for (const LazyCut& c : cuts) {
      for (const Assignment& a : feasible) CHECK(satisfied(inst, c, a));
    }
  }
}
