#pragma once

// Solution files and the per-run statistics CSV.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ors/stats.hpp"

namespace ors {

struct SolutionFile {
  std::string instance_id;
  std::string status;
  Rational F{0};
  double bound = 0.0;
  std::vector<std::pair<int, int>> y;  // (surgeon, block)
  std::vector<std::pair<int, int>> x;  // (patient, block)
  std::vector<std::pair<int, std::int64_t>> f;  // (surgeon, follower value)
};

SolutionFile make_solution(const Instance& inst, const Assignment& a, const SolveStats& stats);
std::string solution_to_json(const SolutionFile& sol);
/// Throws ParseError on malformed input.
SolutionFile solution_from_json(const std::string& text);
void save_solution(const SolutionFile& sol, const std::filesystem::path& path);
SolutionFile load_solution(const std::filesystem::path& path);

/// Rebuilds the assignment; throws std::out_of_range on indices the instance lacks.
Assignment to_assignment(const Instance& inst, const SolutionFile& sol);

/// Recomputes F and every f_s from the stored incidences; empty when they
/// match the recorded values, otherwise one message per mismatch.
std::vector<std::string> rescore(const Instance& inst, const SolutionFile& sol);

std::string stats_csv_header();
std::string stats_csv_row(const std::string& instance_id, const std::string& solver, const std::string& cut_kind,
                          const SolveStats& stats);

}  // namespace ors
