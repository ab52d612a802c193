#include "ors/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"

namespace ors {

namespace {

std::string default_name(const GenParams& p) {
  std::ostringstream os;
  os << "S" << p.surgeons << "_R" << p.rooms << "_D" << p.days << "_lf" << to_double(p.load_factor) << "_seed" << p.seed;
  return os.str();
}

}  // namespace

std::string params_to_json(const GenParams& p) {
  nlohmann::json j;
  j["surgeons"] = p.surgeons;
  j["rooms"] = p.rooms;
  j["days"] = p.days;
  j["load_factor"] = to_string(p.load_factor);
  j["lf_tolerance"] = to_string(p.lf_tolerance);
  j["duration"] = {{"mu", p.duration_mu}, {"sigma", p.duration_sigma}, {"shift", p.duration_shift},
                   {"min", p.duration_min}, {"max", p.duration_max}};
  j["prio_range"] = {p.prio_min, p.prio_max};
  j["seed"] = p.seed;
  return j.dump();
}

Instance generate_instance(const GenParams& p) {
  if (p.surgeons < 1) throw std::invalid_argument("need at least one surgeon");
  if (p.load_factor <= 0) throw std::invalid_argument("load factor must be positive");
  if (p.lf_tolerance < 0) throw std::invalid_argument("load tolerance must be non-negative");
  if (p.duration_min < 1 || p.duration_max < p.duration_min) throw std::invalid_argument("bad duration bounds");
  if (p.prio_min < 1 || p.prio_max < p.prio_min) throw std::invalid_argument("bad priority range");

  InstanceSpec spec;
  spec.name = p.name.empty() ? default_name(p) : p.name;
  spec.seed = p.seed;
  spec.params_json = params_to_json(p);
  spec.days = p.days;
  spec.rooms = p.rooms;
  spec.slots_per_day = p.slots_per_day;
  spec.lengths = p.lengths;
  spec.starts = p.starts;
  spec.v_day = p.v_day;
  spec.v_horizon = p.v_horizon < 0 ? p.days * p.v_day : p.v_horizon;
  spec.alpha = p.alpha;
  spec.beta = p.beta;

  const Rational capacity(static_cast<std::int64_t>(p.slots_per_day) * p.rooms * p.days);
  const Rational lo = (p.load_factor - p.lf_tolerance) * capacity;
  const Rational hi = (p.load_factor + p.lf_tolerance) * capacity;

  std::mt19937_64 rng(p.seed);
  std::lognormal_distribution<double> lognormal(p.duration_mu, p.duration_sigma);
  std::uniform_int_distribution<int> pick_surgeon(0, p.surgeons - 1);
  std::uniform_int_distribution<int> pick_prio(p.prio_min, p.prio_max);
  auto draw_duration = [&] {
    const double v = std::round(lognormal(rng) + p.duration_shift);
    return static_cast<int>(std::clamp(v, static_cast<double>(p.duration_min), static_cast<double>(p.duration_max)));
  };

  spec.surgeons.resize(static_cast<std::size_t>(p.surgeons));
  for (int s = 0; s < p.surgeons; ++s) spec.surgeons[static_cast<std::size_t>(s)].id = s;

  std::int64_t total = 0;
  int next_id = 0;
  int redraws = 0;
  while (Rational(total) < lo) {
    const int d = draw_duration();
    if (Rational(total + d) > hi) {
      // Overshooting draw: discard it and try again.
      if (++redraws > p.max_rounds) {
        throw GenerationError("load window [" + to_string(lo) + ", " + to_string(hi) +
                              "] not reached after " + std::to_string(p.max_rounds) + " redraws");
      }
      continue;
    }
    const int s = pick_surgeon(rng);
    PatientSpec ps;
    ps.id = next_id++;
    ps.duration = d;
    ps.prio_leader = pick_prio(rng);
    ps.prio_follower = pick_prio(rng);
    spec.surgeons[static_cast<std::size_t>(s)].patients.push_back(ps);
    total += d;
  }
  return Instance(std::move(spec));
}

}  // namespace ors
