#pragma once

// Synthetic instance generation and JSON (de)serialisation.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ors/domain.hpp"

namespace ors {

struct GenParams {
  int surgeons = 12;
  int rooms = 1;
  int days = 5;
  Rational load_factor{2};
  Rational lf_tolerance{1, 40};
  // Shifted lognormal in slots: round(exp(N(mu, sigma)) + shift), clipped.
  double duration_mu = 1.72;
  double duration_sigma = 0.7;
  double duration_shift = -0.5;
  int duration_min = 1;
  int duration_max = 30;
  int prio_min = 1;
  int prio_max = 4;
  std::uint64_t seed = 1;
  int max_rounds = 1000;

  int slots_per_day = 32;
  std::vector<int> lengths{8, 16, 24, 32};
  std::vector<int> starts{0, 8, 16, 24};
  int v_day = 1;
  int v_horizon = -1;  // < 0: one block per day
  Rational alpha{1};
  Rational beta{1};
  std::string name;  // defaults to a name derived from the parameters
};

/// Thrown when the load window cannot be hit within max_rounds redraws.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance generate_instance(const GenParams& params);
std::string params_to_json(const GenParams& params);

/// Thrown by the loaders; the message names the offending field or line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace ors
