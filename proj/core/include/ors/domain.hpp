#pragma once

// Core data model: instance, block catalogue, candidate assignments, objective
// evaluation and single-level feasibility checking.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 rewritten comparisons, rational<long> == int picks boost's
// reversed mixed-type template and recurses forever; these exact matches win.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) {
  return a.denominator() == 1 && a.numerator() == b;
}

}  // namespace boost

namespace ors {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
/// Accepts "3", "-2", "3/4", and finite decimals such as "1.475".
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);
/// Greatest common "unit" of two non-negative rationals: every integer
/// combination a*x + b*y lies on the lattice g*Z. Returns 0 when both are 0.
Rational rational_gcd(const Rational& x, const Rational& y);

struct Patient {
  int id = 0;
  int surgeon = 0;  // surgeon index
  int duration = 1;  // slots
  int prio_leader = 1;
  int prio_follower = 1;
};

struct Block {
  int id = 0;
  int day = 0;
  int start = 0;
  int length = 0;

  int end() const { return start + length; }
};

/// Every (day, start, length) combination that fits in a day, ordered by
/// (day, start, length). Block ids are positions in the returned vector.
std::vector<Block> enumerate_blocks(int days, int slots_per_day, std::span<const int> lengths,
                                    std::span<const int> starts);

/// Overlap sets O_dt for every day d and every start-time grid point t.
/// Result is indexed [d * starts.size() + t_index] and lists block ids in
/// ascending order.
std::vector<std::vector<int>> build_overlap_sets(std::span<const Block> blocks, int days,
                                                 std::span<const int> starts);

struct PatientSpec {
  int id = 0;
  int duration = 1;
  int prio_leader = 1;
  int prio_follower = 1;
};

struct SurgeonSpec {
  int id = 0;
  std::vector<PatientSpec> patients;
};

/// Plain description of an instance; the Instance constructor validates it and
/// derives the catalogue.
struct InstanceSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::string params_json = "{}";  // free-form generator parameters

  int days = 1;
  int rooms = 1;
  int slots_per_day = 32;
  std::vector<int> lengths{8, 16, 24, 32};
  std::vector<int> starts{0, 8, 16, 24};
  int v_day = 1;
  int v_horizon = 1;
  int capacity = -1;  // < 0: slots_per_day * rooms * days
  Rational alpha{1};
  Rational beta{1};
  std::vector<std::pair<int, int>> unavailability;  // (surgeon index, block id)
  std::vector<SurgeonSpec> surgeons;
};

class Instance {
 public:
  explicit Instance(InstanceSpec spec);

  const InstanceSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }

  int days() const { return spec_.days; }
  int rooms() const { return spec_.rooms; }
  int slots_per_day() const { return spec_.slots_per_day; }
  int v_day() const { return spec_.v_day; }
  int v_horizon() const { return spec_.v_horizon; }
  int capacity() const { return capacity_; }
  const Rational& alpha() const { return spec_.alpha; }
  const Rational& beta() const { return spec_.beta; }

  /// Sorted, de-duplicated block lengths (the set L).
  const std::vector<int>& lengths() const { return lengths_; }
  const std::vector<int>& starts() const { return starts_; }
  int length_index(int length) const;

  std::span<const Block> blocks() const { return blocks_; }
  const Block& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& blocks_on_day(int d) const { return blocks_by_day_[static_cast<std::size_t>(d)]; }

  /// Number of (day, start) grid points, i.e. the room-capacity rows.
  int num_time_points() const { return static_cast<int>(overlap_.size()); }
  const std::vector<int>& overlap(int point) const { return overlap_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& overlap(int day, int start_index) const {
    return overlap(day * static_cast<int>(starts_.size()) + start_index);
  }
  /// Grid points whose overlap set contains block b.
  const std::vector<int>& covering_points(int b) const { return covering_[static_cast<std::size_t>(b)]; }

  int num_surgeons() const { return static_cast<int>(spec_.surgeons.size()); }
  int num_patients() const { return static_cast<int>(patients_.size()); }
  std::span<const Patient> patients() const { return patients_; }
  const Patient& patient(int p) const { return patients_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& patients_of(int s) const { return patients_of_[static_cast<std::size_t>(s)]; }

  bool unavailable(int s, int b) const {
    return unavailable_[static_cast<std::size_t>(s) * blocks_.size() + static_cast<std::size_t>(b)];
  }

  /// Maximum number of blocks of each length (by length index) one surgeon
  /// can hold: min(v^h, v^d * |D|, number of blocks of that length).
  const std::vector<int>& max_blocks_per_length() const { return max_per_length_; }

  /// Sum of leader priorities over all patients.
  std::int64_t total_prio_leader() const { return total_prio_leader_; }
  /// alpha*C + beta*sum(pi^LP): the objective of the empty assignment.
  Rational empty_objective() const;
  /// Lattice unit of the leader objective: F always lies on empty_objective + unit*Z.
  Rational objective_unit() const { return rational_gcd(spec_.alpha, spec_.beta); }

 private:
  InstanceSpec spec_;
  int capacity_ = 0;
  std::vector<int> lengths_;
  std::vector<int> starts_;
  std::vector<Block> blocks_;
  std::vector<std::vector<int>> blocks_by_day_;
  std::vector<std::vector<int>> overlap_;
  std::vector<std::vector<int>> covering_;
  std::vector<Patient> patients_;
  std::vector<std::vector<int>> patients_of_;
  std::vector<bool> unavailable_;
  std::vector<int> max_per_length_;
  std::int64_t total_prio_leader_ = 0;
};

/// Count of blocks per length index held by one surgeon.
using Profile = std::vector<int>;

Profile profile_of(const Instance& inst, std::span<const int> blocks);

/// Candidate solution: surgeon-block incidences y and patient-block incidences x.
/// Stored as sorted incidence lists so that infeasible candidates (a patient in
/// two blocks, say) remain representable for the checker.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int num_surgeons, int num_patients);
  explicit Assignment(const Instance& inst) : Assignment(inst.num_surgeons(), inst.num_patients()) {}

  void assign_block(int s, int b);
  void assign_patient(int p, int b);
  void clear_patient(int p);

  bool has_block(int s, int b) const;
  const std::vector<int>& blocks_of(int s) const { return y_[static_cast<std::size_t>(s)]; }
  const std::vector<int>& blocks_of_patient(int p) const { return x_[static_cast<std::size_t>(p)]; }
  bool scheduled(int p) const { return !x_[static_cast<std::size_t>(p)].empty(); }

  int num_surgeons() const { return static_cast<int>(y_.size()); }
  int num_patients() const { return static_cast<int>(x_.size()); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::vector<int>> y_;
  std::vector<std::vector<int>> x_;
};

/// Leader objective F.
Rational leader_objective(const Instance& inst, const Assignment& a);
/// Follower objective f_s of surgeon s.
std::int64_t follower_objective(const Instance& inst, int s, const Assignment& a);

/// Summary figures reported next to F: leader priority of scheduled patients,
/// scheduled slots, and the follower sum.
struct AssignmentMetrics {
  std::int64_t leader_priority = 0;
  std::int64_t scheduled_slots = 0;
  std::int64_t follower_sum = 0;
  double utilisation = 0.0;
};
AssignmentMetrics metrics_of(const Instance& inst, const Assignment& a);

enum class ViolationTag { Rooms, VDay, VHorizon, Unavailable, Once, Capacity };
const char* to_string(ViolationTag tag);

struct Violation {
  ViolationTag tag;
  std::vector<int> indices;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

FeasibilityReport check_single_level_feasibility(const Instance& inst, const Assignment& a);

}  // namespace ors
