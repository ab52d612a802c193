#pragma once

// Single-level leader model over (y, x, q) built on optkern. Shared by the
// lazy-cut solver and the centralised / decentralised reference models.

#include <span>
#include <vector>

#include "ors/domain.hpp"
#include "ors/optkern.hpp"

namespace ors {

enum class LeaderObjective {
  Leader,       // minimise the leader objective
  FollowerSum,  // maximise the sum of follower objectives (as a minimisation of its negative)
};

struct LeaderModel {
  optkern::MipProblem mip;
  std::vector<std::vector<int>> y;               // [s][b] column, -1 if unavailable
  std::vector<std::vector<int>> x;               // [p][b] column, -1 if absent
  std::vector<std::vector<std::vector<int>>> q;  // [s][l][w] column (empty without q)

  Assignment decode(const Instance& inst, std::span<const double> values) const;
  /// Row Σ π^FP x over all x columns; sense and rhs are left to the caller.
  optkern::Constraint follower_sum_row(const Instance& inst) const;
};

LeaderModel build_leader_model(const Instance& inst, bool with_q, LeaderObjective objective = LeaderObjective::Leader);

/// Sets the model's objective to the leader objective in the given sense.
void set_leader_objective(const Instance& inst, LeaderModel& model, optkern::Sense sense);

}  // namespace ors
