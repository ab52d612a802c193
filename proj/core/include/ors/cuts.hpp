#pragma once

// Block-count linkage variables and the two lazy-cut families that exclude
// bilevel-infeasible leader candidates, plus the per-surgeon cut store used
// for lazy-constraint remembering.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "ors/domain.hpp"
#include "ors/optkern.hpp"

namespace ors {

enum class CutKind { Objective, Assignment };  // O-LC, A-LC
const char* to_string(CutKind k);

struct LazyCut {
  CutKind kind = CutKind::Objective;
  int surgeon = 0;
  Profile profile;           // block count per length index
  std::vector<int> pa_set;   // sorted patient indices (assignment cuts)
  std::int64_t f_c = 0;      // follower optimum (objective cuts)
  long counter = 0;          // generation order; not part of identity

  auto key() const { return std::tie(kind, surgeon, profile, pa_set, f_c); }
};

/// Largest block count per length one surgeon can hold (W_l = {0..bound}).
std::vector<int> w_bounds(const Instance& inst);

/// Index lookups into a host model. q(l, w) returns the column of q_{s,l,w}
/// for the cut's surgeon; x(p, b) the column of x_pb or -1 when absent.
struct CutVariables {
  std::function<int(int length_index, int w)> q;
  std::function<int(int patient, int block)> x;
  std::vector<int> blocks;  // blocks that may carry x variables for the surgeon
};

/// Rows Σ_w w q_slw - Σ_{b:len l} y_sb = 0 and Σ_w q_slw = 1 for every length.
/// y(b) returns the column of y_sb or -1 when the block is not available.
std::vector<optkern::Constraint> build_q_link(const Instance& inst, const std::function<int(int, int)>& q,
                                              const std::function<int(int)>& y);

optkern::Constraint build_olc(const Instance& inst, const LazyCut& cut, const CutVariables& vars);
optkern::Constraint build_alc(const Instance& inst, const LazyCut& cut, const CutVariables& vars);
optkern::Constraint build_cut(const Instance& inst, const LazyCut& cut, const CutVariables& vars);

/// Evaluates the cut on a full assignment (q taken from the surgeon's blocks).
bool satisfied(const Instance& inst, const LazyCut& cut, const Assignment& a);
/// True when the cut's indicator is on for the given block set.
bool active_for(const Instance& inst, const LazyCut& cut, const Profile& profile);

/// Append-only per-surgeon cut log with de-duplication. Reads may run
/// concurrently; appends are serialised.
class CutStore {
 public:
  explicit CutStore(int num_surgeons = 0);

  /// Returns false when an identical cut is already stored.
  bool record(LazyCut cut);
  std::vector<LazyCut> retrieve(int surgeon) const;
  std::size_t size() const;
  void clear();
  void dump(std::ostream& os) const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<std::vector<LazyCut>> cuts_;
  std::set<std::tuple<CutKind, int, Profile, std::vector<int>, std::int64_t>> seen_;
  long counter_ = 0;
};

}  // namespace ors
