#include "ors/cuts.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ors/follower.hpp"

namespace ors {

const char* to_string(CutKind k) { return k == CutKind::Objective ? "OLC" : "ALC"; }

std::vector<int> w_bounds(const Instance& inst) { return inst.max_blocks_per_length(); }

std::vector<optkern::Constraint> build_q_link(const Instance& inst, const std::function<int(int, int)>& q,
                                              const std::function<int(int)>& y) {
  const std::vector<int> wb = w_bounds(inst);
  std::vector<optkern::Constraint> rows;
  for (std::size_t l = 0; l < inst.lengths().size(); ++l) {
    optkern::Constraint count;
    count.sense = optkern::RowSense::Equal;
    optkern::Constraint pick;
    pick.sense = optkern::RowSense::Equal;
    pick.rhs = 1.0;
    for (int w = 0; w <= wb[l]; ++w) {
      const int col = q(static_cast<int>(l), w);
      if (w > 0) count.add(col, w);
      pick.add(col, 1.0);
    }
    for (const Block& b : inst.blocks()) {
      if (b.length != inst.lengths()[l]) continue;
      const int col = y(b.id);
      if (col >= 0) count.add(col, -1.0);
    }
    rows.push_back(std::move(count));
    rows.push_back(std::move(pick));
  }
  return rows;
}

namespace {

void add_indicator(const Instance& inst, const LazyCut& cut, const CutVariables& vars, double big_m,
                   optkern::Constraint& row) {
  const std::vector<int> wb = w_bounds(inst);
  if (cut.profile.size() != inst.lengths().size()) throw std::invalid_argument("cut profile has wrong length count");
  for (std::size_t l = 0; l < cut.profile.size(); ++l) {
    const int n = cut.profile[l];
    if (n < 0 || n > wb[l]) throw std::invalid_argument("cut profile count outside W_l");
    row.add(vars.q(static_cast<int>(l), n), -big_m);
  }
  row.rhs -= big_m * static_cast<double>(inst.lengths().size());
  row.sense = optkern::RowSense::GreaterEqual;
}

void add_patient(const CutVariables& vars, int p, double coef, optkern::Constraint& row) {
  for (int b : vars.blocks) {
    const int col = vars.x(p, b);
    if (col >= 0) row.add(col, coef);
  }
}

}  // namespace

optkern::Constraint build_olc(const Instance& inst, const LazyCut& cut, const CutVariables& vars) {
  optkern::Constraint row;
  row.name = "olc";
  for (int p : inst.patients_of(cut.surgeon)) add_patient(vars, p, inst.patient(p).prio_follower, row);
  row.rhs = static_cast<double>(cut.f_c);
  add_indicator(inst, cut, vars, static_cast<double>(follower_big_m(inst, cut.surgeon)), row);
  return row;
}

optkern::Constraint build_alc(const Instance& inst, const LazyCut& cut, const CutVariables& vars) {
  optkern::Constraint row;
  row.name = "alc";
  for (int p : inst.patients_of(cut.surgeon)) {
    const bool in_pa = std::binary_search(cut.pa_set.begin(), cut.pa_set.end(), p);
    add_patient(vars, p, in_pa ? 1.0 : -1.0, row);
  }
  row.rhs = static_cast<double>(cut.pa_set.size());
  add_indicator(inst, cut, vars, static_cast<double>(follower_big_m(inst, cut.surgeon)), row);
  return row;
}

optkern::Constraint build_cut(const Instance& inst, const LazyCut& cut, const CutVariables& vars) {
  return cut.kind == CutKind::Objective ? build_olc(inst, cut, vars) : build_alc(inst, cut, vars);
}

bool active_for(const Instance& /*inst*/, const LazyCut& cut, const Profile& profile) { return profile == cut.profile; }

bool satisfied(const Instance& inst, const LazyCut& cut, const Assignment& a) {
  const Profile n = profile_of(inst, a.blocks_of(cut.surgeon));
  std::int64_t matches = 0;
  for (std::size_t l = 0; l < n.size(); ++l) matches += n[l] == cut.profile[l] ? 1 : 0;
  const std::int64_t big_m = follower_big_m(inst, cut.surgeon);
  std::int64_t lhs = big_m * (static_cast<std::int64_t>(n.size()) - matches);
  std::int64_t rhs = 0;
  for (int p : inst.patients_of(cut.surgeon)) {
    const auto times = static_cast<std::int64_t>(a.blocks_of_patient(p).size());
    if (cut.kind == CutKind::Objective) {
      lhs += inst.patient(p).prio_follower * times;
    } else {
      const bool in_pa = std::binary_search(cut.pa_set.begin(), cut.pa_set.end(), p);
      lhs += (in_pa ? 1 : -1) * times;
    }
  }
  rhs = cut.kind == CutKind::Objective ? cut.f_c : static_cast<std::int64_t>(cut.pa_set.size());
  return lhs >= rhs;
}

CutStore::CutStore(int num_surgeons) : cuts_(static_cast<std::size_t>(std::max(0, num_surgeons))) {}

bool CutStore::record(LazyCut cut) {
  std::unique_lock lock(mutex_);
  std::sort(cut.pa_set.begin(), cut.pa_set.end());
  auto key = std::make_tuple(cut.kind, cut.surgeon, cut.profile, cut.pa_set, cut.f_c);
  if (!seen_.insert(std::move(key)).second) return false;
  if (cut.surgeon >= static_cast<int>(cuts_.size())) cuts_.resize(static_cast<std::size_t>(cut.surgeon) + 1);
  cut.counter = counter_++;
  cuts_[static_cast<std::size_t>(cut.surgeon)].push_back(std::move(cut));
  return true;
}

std::vector<LazyCut> CutStore::retrieve(int surgeon) const {
  std::shared_lock lock(mutex_);
  if (surgeon < 0 || surgeon >= static_cast<int>(cuts_.size())) return {};
  return cuts_[static_cast<std::size_t>(surgeon)];
}

std::size_t CutStore::size() const {
  std::shared_lock lock(mutex_);
  return seen_.size();
}

void CutStore::clear() {
  std::unique_lock lock(mutex_);
  for (auto& v : cuts_) v.clear();
  seen_.clear();
  counter_ = 0;
}

void CutStore::dump(std::ostream& os) const {
  std::shared_lock lock(mutex_);
  for (const auto& per : cuts_) {
    for (const LazyCut& c : per) {
      os << to_string(c.kind) << " s=" << c.surgeon << " profile=";
      for (std::size_t l = 0; l < c.profile.size(); ++l) os << (l ? "," : "") << c.profile[l];
      if (c.kind == CutKind::Objective) {
        os << " f=" << c.f_c;
      } else {
        os << " pa=";
        for (std::size_t i = 0; i < c.pa_set.size(); ++i) os << (i ? "," : "") << c.pa_set[i];
      }
      os << '\n';
    }
  }
}

}  // namespace ors
