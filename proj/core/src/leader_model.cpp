#include "ors/leader_model.hpp"

#include "ors/cuts.hpp"

namespace ors {

using optkern::Constraint;

LeaderModel build_leader_model(const Instance& inst, bool with_q, LeaderObjective objective) {
  LeaderModel m;
  auto& lp = m.mip.lp;
  const int ns = inst.num_surgeons();
  const int nb = inst.num_blocks();

  m.y.assign(static_cast<std::size_t>(ns), std::vector<int>(static_cast<std::size_t>(nb), -1));
  for (int s = 0; s < ns; ++s) {
    for (int b = 0; b < nb; ++b) {
      if (inst.unavailable(s, b)) continue;
      const int col = lp.add_variable(0.0, 1.0, 0.0);
      m.y[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] = col;
      m.mip.binaries.push_back(col);
    }
  }
  m.x.assign(static_cast<std::size_t>(inst.num_patients()), std::vector<int>(static_cast<std::size_t>(nb), -1));
  for (int p = 0; p < inst.num_patients(); ++p) {
    const int s = inst.patient(p).surgeon;
    for (int b = 0; b < nb; ++b) {
      if (m.y[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] < 0) continue;
      const int col = lp.add_variable(0.0, 1.0, 0.0);
      m.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)] = col;
      m.mip.binaries.push_back(col);
    }
  }
  if (with_q) {
    const std::vector<int> wb = w_bounds(inst);
    m.q.assign(static_cast<std::size_t>(ns), {});
    for (int s = 0; s < ns; ++s) {
      auto& qs = m.q[static_cast<std::size_t>(s)];
      qs.assign(inst.lengths().size(), {});
      for (std::size_t l = 0; l < wb.size(); ++l) {
        for (int w = 0; w <= wb[l]; ++w) {
          const int col = lp.add_variable(0.0, 1.0, 0.0);
          qs[l].push_back(col);
          m.mip.binaries.push_back(col);
        }
      }
    }
  }

  // Rooms: blocks in progress at every grid point.
  for (int pt = 0; pt < inst.num_time_points(); ++pt) {
    Constraint row;
    row.rhs = inst.rooms();
    for (int b : inst.overlap(pt)) {
      for (int s = 0; s < ns; ++s) {
        const int col = m.y[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
        if (col >= 0) row.add(col, 1.0);
      }
    }
    if (!row.index.empty()) lp.add_constraint(std::move(row));
  }
  for (int s = 0; s < ns; ++s) {
    const auto& ys = m.y[static_cast<std::size_t>(s)];
    for (int d = 0; d < inst.days(); ++d) {
      Constraint row;
      row.rhs = inst.v_day();
      for (int b : inst.blocks_on_day(d)) {
        if (ys[static_cast<std::size_t>(b)] >= 0) row.add(ys[static_cast<std::size_t>(b)], 1.0);
      }
      if (!row.index.empty()) lp.add_constraint(std::move(row));
    }
    Constraint hor;
    hor.rhs = inst.v_horizon();
    for (int b = 0; b < nb; ++b) {
      if (ys[static_cast<std::size_t>(b)] >= 0) hor.add(ys[static_cast<std::size_t>(b)], 1.0);
    }
    if (!hor.index.empty()) lp.add_constraint(std::move(hor));
  }
  for (int p = 0; p < inst.num_patients(); ++p) {
    Constraint row;
    row.rhs = 1.0;
    for (int b = 0; b < nb; ++b) {
      const int col = m.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)];
      if (col >= 0) row.add(col, 1.0);
    }
    if (!row.index.empty()) lp.add_constraint(std::move(row));
  }
  for (int s = 0; s < ns; ++s) {
    for (int b = 0; b < nb; ++b) {
      const int ycol = m.y[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
      if (ycol < 0) continue;
      Constraint row;
      for (int p : inst.patients_of(s)) row.add(m.x[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)], inst.patient(p).duration);
      row.add(ycol, -inst.block(b).length);
      lp.add_constraint(std::move(row));
    }
  }
  if (with_q) {
    for (int s = 0; s < ns; ++s) {
      const auto& qs = m.q[static_cast<std::size_t>(s)];
      const auto& ys = m.y[static_cast<std::size_t>(s)];
      for (Constraint& row : build_q_link(
               inst, [&](int l, int w) { return qs[static_cast<std::size_t>(l)][static_cast<std::size_t>(w)]; },
               [&](int b) { return ys[static_cast<std::size_t>(b)]; })) {
        lp.add_constraint(std::move(row));
      }
    }
  }

  if (objective == LeaderObjective::Leader) {
    set_leader_objective(inst, m, optkern::Sense::Minimize);
  } else {
    lp.set_sense(optkern::Sense::Maximize);
    for (int p = 0; p < inst.num_patients(); ++p) {
      for (int col : m.x[static_cast<std::size_t>(p)]) {
        if (col >= 0) lp.set_cost(col, inst.patient(p).prio_follower);
      }
    }
  }
  return m;
}

void set_leader_objective(const Instance& inst, LeaderModel& model, optkern::Sense sense) {
  auto& lp = model.mip.lp;
  lp.set_sense(sense);
  const double alpha = to_double(inst.alpha());
  const double beta = to_double(inst.beta());
  lp.set_objective_offset(to_double(inst.empty_objective()));
  for (int j = 0; j < lp.num_variables(); ++j) lp.set_cost(j, 0.0);
  for (int p = 0; p < inst.num_patients(); ++p) {
    const Patient& pt = inst.patient(p);
    for (int col : model.x[static_cast<std::size_t>(p)]) {
      if (col >= 0) lp.set_cost(col, -alpha * pt.duration - beta * pt.prio_leader);
    }
  }
}

Assignment LeaderModel::decode(const Instance& inst, std::span<const double> values) const {
  Assignment a(inst);
  for (std::size_t s = 0; s < y.size(); ++s) {
    for (std::size_t b = 0; b < y[s].size(); ++b) {
      if (y[s][b] >= 0 && values[static_cast<std::size_t>(y[s][b])] > 0.5) a.assign_block(static_cast<int>(s), static_cast<int>(b));
    }
  }
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (std::size_t b = 0; b < x[p].size(); ++b) {
      if (x[p][b] >= 0 && values[static_cast<std::size_t>(x[p][b])] > 0.5) a.assign_patient(static_cast<int>(p), static_cast<int>(b));
    }
  }
  return a;
}

Constraint LeaderModel::follower_sum_row(const Instance& inst) const {
  Constraint row;
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (int col : x[p]) {
      if (col >= 0) row.add(col, inst.patient(static_cast<int>(p)).prio_follower);
    }
  }
  return row;
}

}  // namespace ors
