#include "ors/analysis.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <random>
#include <thread>

#include "ors/compact.hpp"
#include "ors/leader_model.hpp"

namespace ors {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ReferenceResult finish(const Instance& inst, Assignment a, SolveStatus status, Clock::time_point t0) {
  ReferenceResult r;
  r.F = leader_objective(inst, a);
  r.metrics = metrics_of(inst, a);
  r.assignment = std::move(a);
  r.status = status;
  r.seconds = since(t0);
  return r;
}

SolveStatus from_mip(optkern::MipStatus s) {
  switch (s) {
    case optkern::MipStatus::Optimal: return SolveStatus::Optimal;
    case optkern::MipStatus::Infeasible: return SolveStatus::Infeasible;
    default: return SolveStatus::TimeLimit;
  }
}

ReferenceResult via_bnp(const Instance& inst, ColumnRule rule, Tiebreak tiebreak, double time_limit) {
  const auto t0 = Clock::now();
  BnpOptions o;
  o.rule = rule;
  o.tiebreak = tiebreak;
  o.use_initial_heuristic = false;
  o.time_limit = time_limit;
  BnpResult r = solve_bnp(inst, o);
  return finish(inst, std::move(r.assignment), r.stats.status, t0);
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ReferenceResult solve_centralized(const Instance& inst, const ReferenceOptions& options) {
  if (options.engine == AnalysisEngine::Decomposition) {
    return via_bnp(inst, ColumnRule::Centralized, Tiebreak::LeaderBest, options.time_limit);
  }
  const auto t0 = Clock::now();
  LeaderModel m = build_leader_model(inst, false, LeaderObjective::Leader);
  optkern::MipOptions mo;
  mo.time_limit = options.time_limit;
  mo.objective_granularity = to_double(inst.objective_unit());
  mo.granularity_offset = to_double(inst.empty_objective());
  const optkern::MipResult r = optkern::solve_mip(m.mip, mo);
  Assignment a = r.has_incumbent() ? m.decode(inst, r.incumbent) : Assignment(inst);
  return finish(inst, std::move(a), from_mip(r.status), t0);
}

ReferenceResult solve_decentralized(const Instance& inst, Tiebreak tiebreak, const ReferenceOptions& options) {
  if (options.engine == AnalysisEngine::Decomposition) {
    return via_bnp(inst, ColumnRule::Decentralized, tiebreak, options.time_limit);
  }
  const auto t0 = Clock::now();
  LeaderModel m = build_leader_model(inst, false, LeaderObjective::FollowerSum);
  optkern::MipOptions mo;
  mo.time_limit = options.time_limit;
  mo.objective_granularity = 1.0;
  optkern::MipResult r = optkern::solve_mip(m.mip, mo);
  if (!r.has_incumbent() || tiebreak == Tiebreak::Solver || r.status != optkern::MipStatus::Optimal) {
    Assignment a = r.has_incumbent() ? m.decode(inst, r.incumbent) : Assignment(inst);
    return finish(inst, std::move(a), from_mip(r.status), t0);
  }
  // Second stage: keep the follower sum at its optimum and rank by F.
  const double opt = std::round(r.objective);
  optkern::Constraint keep = m.follower_sum_row(inst);
  keep.sense = optkern::RowSense::GreaterEqual;
  keep.rhs = opt;
  m.mip.lp.add_constraint(std::move(keep));
  set_leader_objective(inst, m,
                       tiebreak == Tiebreak::LeaderBest ? optkern::Sense::Minimize : optkern::Sense::Maximize);
  optkern::MipOptions mo2;
  mo2.time_limit = std::max(0.0, options.time_limit - since(t0));
  if (tiebreak == Tiebreak::LeaderBest) {
    mo2.objective_granularity = to_double(inst.objective_unit());
    mo2.granularity_offset = to_double(inst.empty_objective());
  }
  const optkern::MipResult r2 = optkern::solve_mip(m.mip, mo2);
  if (!r2.has_incumbent()) {
    return finish(inst, m.decode(inst, r.incumbent), SolveStatus::TimeLimit, t0);
  }
  return finish(inst, m.decode(inst, r2.incumbent), from_mip(r2.status), t0);
}

ReferenceResult solve_bilevel(const Instance& inst, const ReferenceOptions& options) {
  if (options.engine == AnalysisEngine::Decomposition) {
    return via_bnp(inst, ColumnRule::Bilevel, Tiebreak::LeaderBest, options.time_limit);
  }
  const auto t0 = Clock::now();
  CompactOptions co;
  co.time_limit = options.time_limit;
  SolveResult r = solve_compact(inst, co);
  return finish(inst, std::move(r.assignment), r.stats.status, t0);
}

Rational PriceRatio::value() const {
  if (denominator == 0) return Rational(1);
  return numerator / denominator;
}

double PriceRatio::to_double() const {
  if (infinite) return std::numeric_limits<double>::infinity();
  return ors::to_double(value());
}

std::string PriceRatio::str(int decimals) const {
  if (infinite) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, to_double());
  return buf;
}

PriceRatio make_ratio(const Rational& numerator, const Rational& denominator, bool both_optimal) {
  PriceRatio r;
  r.numerator = numerator;
  r.denominator = denominator;
  r.infinite = denominator == 0 && numerator != 0;
  r.non_optimal = !both_optimal;
  return r;
}

PriceRatio price_of_stability(const Instance& inst, const ReferenceOptions& options) {
  const ReferenceResult bil = solve_bilevel(inst, options);
  const ReferenceResult cen = solve_centralized(inst, options);
  return make_ratio(bil.F, cen.F, bil.optimal() && cen.optimal());
}

PriceRatio price_of_decentralisation(const Instance& inst, Tiebreak tiebreak, const ReferenceOptions& options) {
  const ReferenceResult dec = solve_decentralized(inst, tiebreak, options);
  const ReferenceResult cen = solve_centralized(inst, options);
  return make_ratio(dec.F, cen.F, dec.optimal() && cen.optimal());
}

ScenarioSpec ScenarioSpec::make(int id, Rational alpha, Rational beta) {
  ScenarioSpec s;
  s.id = id;
  s.alpha = alpha;
  s.beta = beta;
  switch (id) {
    case 1: break;
    case 2: s.leader = s.follower = PrioRule::Random; break;
    case 3: s.leader = PrioRule::Random; s.shared = false; break;
    case 4: s.follower = PrioRule::Random; s.shared = false; break;
    case 5: s.leader = s.follower = PrioRule::Random; s.shared = false; break;
    default: throw std::invalid_argument("scenario id must be in 1..5");
  }
  return s;
}

std::vector<ScenarioSpec> table_cells() {
  std::vector<ScenarioSpec> out;
  out.push_back(ScenarioSpec::make(1, 1, 0));
  out.push_back(ScenarioSpec::make(5, 1, 0));
  for (int id = 1; id <= 5; ++id) out.push_back(ScenarioSpec::make(id, 0, 1));
  for (int id = 1; id <= 5; ++id) out.push_back(ScenarioSpec::make(id, 1, 1));
  return out;
}

Instance apply_scenario(const Instance& inst, const ScenarioSpec& scenario, std::uint64_t seed) {
  InstanceSpec spec = inst.spec();
  spec.alpha = scenario.alpha;
  spec.beta = scenario.beta;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> prio(1, 4);
  for (SurgeonSpec& s : spec.surgeons) {
    for (PatientSpec& p : s.patients) {
      const int a = prio(rng);
      const int b = prio(rng);
      p.prio_leader = scenario.leader == PrioRule::Random ? a : 1;
      p.prio_follower = scenario.follower == PrioRule::Random ? (scenario.shared ? a : b) : 1;
    }
  }
  return Instance(std::move(spec));
}

EquilibriumReport evaluate_scenario(const Instance& base, const ScenarioSpec& scenario, const ScenarioOptions& options) {
  EquilibriumReport r;
  r.instance_id = base.name();
  r.scenario = scenario;
  // Priorities depend on instance and scenario only, so every weight setting sees the same draw.
  r.seed = mix(options.seed ^ mix(base.spec().seed) ^ mix(static_cast<std::uint64_t>(scenario.id)));
  const Instance inst = apply_scenario(base, scenario, r.seed);
  r.bilevel = solve_bilevel(inst, options.reference);
  r.decentral = solve_decentralized(inst, options.tiebreak, options.reference);
  r.central = solve_centralized(inst, options.reference);
  r.pos = make_ratio(r.bilevel.F, r.central.F, r.bilevel.optimal() && r.central.optimal());
  r.pod = make_ratio(r.decentral.F, r.central.F, r.decentral.optimal() && r.central.optimal());
  return r;
}

std::vector<EquilibriumReport> run_scenarios(std::span<const Instance> instances, std::span<const ScenarioSpec> scenarios,
                                             const ScenarioOptions& options) {
  const std::size_t n = instances.size() * scenarios.size();
  std::vector<EquilibriumReport> out(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      out[i] = evaluate_scenario(instances[i / scenarios.size()], scenarios[i % scenarios.size()], options);
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(n)));
  if (jobs <= 1) {
    work();
    return out;
  }
  {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  return out;
}

std::string scenario_csv_header() {
  return "instance_id,scenario,alpha,beta,F_eq,PL_eq,U_eq,sumf_eq,t_eq,F_dec,PL_dec,U_dec,sumf_dec,t_dec,"
         "F_cen,PL_cen,U_cen,sumf_cen,t_cen,PoS,PoD";
}

namespace {

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string cells(const ReferenceResult& r) {
  return fmt(to_double(r.F), 3) + "," + std::to_string(r.metrics.leader_priority) + "," +
         fmt(r.metrics.utilisation, 3) + "," + std::to_string(r.metrics.follower_sum) + "," + fmt(r.seconds, 2);
}

}  // namespace

std::string scenario_csv_row(const EquilibriumReport& r) {
  auto ratio = [](const PriceRatio& p) { return p.non_optimal ? p.str() + "*" : p.str(); };
  return r.instance_id + "," + std::to_string(r.scenario.id) + "," + to_string(r.scenario.alpha) + "," +
         to_string(r.scenario.beta) + "," + cells(r.bilevel) + "," + cells(r.decentral) + "," + cells(r.central) + "," +
         ratio(r.pos) + "," + ratio(r.pod);
}

}  // namespace ors
