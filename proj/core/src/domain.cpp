#include "ors/domain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ors {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto num = std::stoll(text.substr(0, slash));
    const auto den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    std::size_t used = 0;
    const auto v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad rational '" + text + "'");
    return Rational(v);
  }
  const bool negative = !text.empty() && text[0] == '-';
  const std::string whole = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos ||
      whole.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad rational '" + text + "'");
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
  const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
  Rational r(w * den + f, den);
  return negative ? -r : r;
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational rational_gcd(const Rational& x, const Rational& y) {
  if (x == 0) return abs(y);
  if (y == 0) return abs(x);
  const std::int64_t den = std::lcm(x.denominator(), y.denominator());
  const std::int64_t a = std::abs(x.numerator() * (den / x.denominator()));
  const std::int64_t b = std::abs(y.numerator() * (den / y.denominator()));
  return Rational(std::gcd(a, b), den);
}

std::vector<Block> enumerate_blocks(int days, int slots_per_day, std::span<const int> lengths,
                                    std::span<const int> starts) {
  std::vector<int> ls(lengths.begin(), lengths.end());
  std::vector<int> ts(starts.begin(), starts.end());
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<Block> blocks;
  for (int d = 0; d < days; ++d) {
    for (int t : ts) {
      for (int l : ls) {
        if (t < 0 || l <= 0 || t + l > slots_per_day) continue;
        blocks.push_back(Block{static_cast<int>(blocks.size()), d, t, l});
      }
    }
  }
  return blocks;
}

std::vector<std::vector<int>> build_overlap_sets(std::span<const Block> blocks, int days,
                                                 std::span<const int> starts) {
  std::vector<int> ts(starts.begin(), starts.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(days) * ts.size());
  for (const Block& b : blocks) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      const int t = ts[ti];
      if (b.start <= t && t < b.end()) {
        sets[static_cast<std::size_t>(b.day) * ts.size() + ti].push_back(b.id);
      }
    }
  }
  return sets;
}

Instance::Instance(InstanceSpec spec) : spec_(std::move(spec)) {
  if (spec_.days < 1) throw std::invalid_argument("instance needs at least one day");
  if (spec_.rooms < 0) throw std::invalid_argument("negative room count");
  if (spec_.slots_per_day < 1) throw std::invalid_argument("slots_per_day must be positive");
  if (spec_.v_day < 0 || spec_.v_horizon < 0) throw std::invalid_argument("negative block limit");
  if (spec_.alpha < 0 || spec_.beta < 0) throw std::invalid_argument("objective weights must be non-negative");
  if (spec_.lengths.empty() || spec_.starts.empty()) throw std::invalid_argument("empty length or start set");

  lengths_ = spec_.lengths;
  std::sort(lengths_.begin(), lengths_.end());
  lengths_.erase(std::unique(lengths_.begin(), lengths_.end()), lengths_.end());
  starts_ = spec_.starts;
  std::sort(starts_.begin(), starts_.end());
  starts_.erase(std::unique(starts_.begin(), starts_.end()), starts_.end());
  for (int l : lengths_) {
    if (l <= 0) throw std::invalid_argument("block lengths must be positive");
  }

  blocks_ = enumerate_blocks(spec_.days, spec_.slots_per_day, lengths_, starts_);
  if (blocks_.empty()) throw std::invalid_argument("no (start, length) pair fits in a day");
  blocks_by_day_.assign(static_cast<std::size_t>(spec_.days), {});
  for (const Block& b : blocks_) blocks_by_day_[static_cast<std::size_t>(b.day)].push_back(b.id);

  overlap_ = build_overlap_sets(blocks_, spec_.days, starts_);
  covering_.assign(blocks_.size(), {});
  for (std::size_t pt = 0; pt < overlap_.size(); ++pt) {
    for (int b : overlap_[pt]) covering_[static_cast<std::size_t>(b)].push_back(static_cast<int>(pt));
  }

  capacity_ = spec_.capacity >= 0 ? spec_.capacity : spec_.slots_per_day * spec_.rooms * spec_.days;

  patients_of_.assign(spec_.surgeons.size(), {});
  for (std::size_t s = 0; s < spec_.surgeons.size(); ++s) {
    for (const PatientSpec& ps : spec_.surgeons[s].patients) {
      if (ps.duration < 1) throw std::invalid_argument("patient duration must be >= 1");
      if (ps.prio_leader < 1 || ps.prio_follower < 1) throw std::invalid_argument("priorities must be >= 1");
      patients_of_[s].push_back(static_cast<int>(patients_.size()));
      patients_.push_back(Patient{ps.id, static_cast<int>(s), ps.duration, ps.prio_leader, ps.prio_follower});
      total_prio_leader_ += ps.prio_leader;
    }
  }

  unavailable_.assign(spec_.surgeons.size() * blocks_.size(), false);
  for (const auto& [s, b] : spec_.unavailability) {
    if (s < 0 || s >= num_surgeons() || b < 0 || b >= num_blocks()) {
      throw std::invalid_argument("unavailability entry references unknown surgeon or block");
    }
    unavailable_[static_cast<std::size_t>(s) * blocks_.size() + static_cast<std::size_t>(b)] = true;
  }

  max_per_length_.assign(lengths_.size(), 0);
  for (std::size_t li = 0; li < lengths_.size(); ++li) {
    int count = 0;
    for (const Block& b : blocks_) count += b.length == lengths_[li] ? 1 : 0;
    max_per_length_[li] = std::min({spec_.v_horizon, spec_.v_day * spec_.days, count});
  }
}

int Instance::length_index(int length) const {
  const auto it = std::lower_bound(lengths_.begin(), lengths_.end(), length);
  if (it == lengths_.end() || *it != length) return -1;
  return static_cast<int>(it - lengths_.begin());
}

Rational Instance::empty_objective() const {
  return spec_.alpha * Rational(capacity_) + spec_.beta * Rational(total_prio_leader_);
}

Profile profile_of(const Instance& inst, std::span<const int> blocks) {
  Profile n(inst.lengths().size(), 0);
  for (int b : blocks) ++n[static_cast<std::size_t>(inst.length_index(inst.block(b).length))];
  return n;
}

Assignment::Assignment(int num_surgeons, int num_patients)
    : y_(static_cast<std::size_t>(num_surgeons)), x_(static_cast<std::size_t>(num_patients)) {}

namespace {
void insert_sorted(std::vector<int>& v, int value) {
  const auto it = std::lower_bound(v.begin(), v.end(), value);
  if (it == v.end() || *it != value) v.insert(it, value);
}
}  // namespace

void Assignment::assign_block(int s, int b) { insert_sorted(y_.at(static_cast<std::size_t>(s)), b); }
void Assignment::assign_patient(int p, int b) { insert_sorted(x_.at(static_cast<std::size_t>(p)), b); }
void Assignment::clear_patient(int p) { x_.at(static_cast<std::size_t>(p)).clear(); }

bool Assignment::has_block(int s, int b) const {
  const auto& v = y_[static_cast<std::size_t>(s)];
  return std::binary_search(v.begin(), v.end(), b);
}

Rational leader_objective(const Instance& inst, const Assignment& a) {
  std::int64_t scheduled_slots = 0;
  std::int64_t missed_prio = 0;
  for (int p = 0; p < inst.num_patients(); ++p) {
    const auto k = static_cast<std::int64_t>(a.blocks_of_patient(p).size());
    scheduled_slots += inst.patient(p).duration * k;
    missed_prio += inst.patient(p).prio_leader * (1 - k);
  }
  return inst.alpha() * Rational(inst.capacity() - scheduled_slots) + inst.beta() * Rational(missed_prio);
}

std::int64_t follower_objective(const Instance& inst, int s, const Assignment& a) {
  std::int64_t f = 0;
  for (int p : inst.patients_of(s)) {
    f += static_cast<std::int64_t>(inst.patient(p).prio_follower) *
         static_cast<std::int64_t>(a.blocks_of_patient(p).size());
  }
  return f;
}

AssignmentMetrics metrics_of(const Instance& inst, const Assignment& a) {
  AssignmentMetrics m;
  for (int p = 0; p < inst.num_patients(); ++p) {
    const auto k = static_cast<std::int64_t>(a.blocks_of_patient(p).size());
    m.leader_priority += inst.patient(p).prio_leader * k;
    m.follower_sum += inst.patient(p).prio_follower * k;
    m.scheduled_slots += inst.patient(p).duration * k;
  }
  m.utilisation = inst.capacity() > 0 ? static_cast<double>(m.scheduled_slots) / inst.capacity() : 0.0;
  return m;
}

const char* to_string(ViolationTag tag) {
  switch (tag) {
    case ViolationTag::Rooms: return "ROOMS";
    case ViolationTag::VDay: return "VDAY";
    case ViolationTag::VHorizon: return "VHOR";
    case ViolationTag::Unavailable: return "UNAVAIL";
    case ViolationTag::Once: return "ONCE";
    case ViolationTag::Capacity: return "CAP";
  }
  return "?";
}

FeasibilityReport check_single_level_feasibility(const Instance& inst, const Assignment& a) {
  FeasibilityReport report;
  auto fail = [&](ViolationTag tag, std::vector<int> idx) {
    report.ok = false;
    report.violations.push_back(Violation{tag, std::move(idx)});
  };
  const int nt = static_cast<int>(inst.starts().size());

  for (int pt = 0; pt < inst.num_time_points(); ++pt) {
    int in_progress = 0;
    for (int b : inst.overlap(pt)) {
      for (int s = 0; s < inst.num_surgeons(); ++s) in_progress += a.has_block(s, b) ? 1 : 0;
    }
    if (in_progress > inst.rooms()) fail(ViolationTag::Rooms, {pt / nt, inst.starts()[static_cast<std::size_t>(pt % nt)]});
  }

  for (int s = 0; s < inst.num_surgeons(); ++s) {
    std::vector<int> per_day(static_cast<std::size_t>(inst.days()), 0);
    for (int b : a.blocks_of(s)) {
      ++per_day[static_cast<std::size_t>(inst.block(b).day)];
      if (inst.unavailable(s, b)) fail(ViolationTag::Unavailable, {s, b});
    }
    for (int d = 0; d < inst.days(); ++d) {
      if (per_day[static_cast<std::size_t>(d)] > inst.v_day()) fail(ViolationTag::VDay, {s, d});
    }
    if (static_cast<int>(a.blocks_of(s).size()) > inst.v_horizon()) fail(ViolationTag::VHorizon, {s});
  }

  for (int p = 0; p < inst.num_patients(); ++p) {
    if (a.blocks_of_patient(p).size() > 1) fail(ViolationTag::Once, {p});
  }

  // Capacity: per (surgeon, block) the load of the surgeon's own patients
  // must fit in Gamma_b * y_sb; a patient in a block its surgeon does not hold
  // therefore always shows up here.
  for (int s = 0; s < inst.num_surgeons(); ++s) {
    std::vector<int> load(static_cast<std::size_t>(inst.num_blocks()), 0);
    for (int p : inst.patients_of(s)) {
      for (int b : a.blocks_of_patient(p)) load[static_cast<std::size_t>(b)] += inst.patient(p).duration;
    }
    for (int b = 0; b < inst.num_blocks(); ++b) {
      const int cap = a.has_block(s, b) ? inst.block(b).length : 0;
      if (load[static_cast<std::size_t>(b)] > cap) fail(ViolationTag::Capacity, {s, b});
    }
  }
  return report;
}

}  // namespace ors
