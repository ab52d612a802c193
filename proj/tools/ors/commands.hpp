#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orscli {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kBreach = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// A solver result that fails its own checks.
struct BreachError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  int surgeons = 12;
  int rooms = 1;
  int days = 5;
  std::string lf = "2";
  std::string alpha = "1";
  std::string beta = "1";
  int count = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

struct SolveArgs {
  std::vector<std::string> instances;
  std::string solver = "bnp";
  std::string cuts = "olc";
  std::string cut_scope;  // compact only; empty means the default
  bool no_multi_pattern = false;
  bool no_lcr = false;
  bool no_initial_heuristic = false;
  std::string pricing = "dp";
  double time_limit = 1200.0;
  std::string out;      // solution file; single instance only
  std::string out_dir;  // one solution per instance
  std::string stats;    // CSV to append to
  bool verify = false;
  int jobs = 1;
  bool quiet = false;
};

struct CheckArgs {
  std::string instance;
  std::string solution;
};

struct PospodArgs {
  std::vector<std::string> instances;
  std::string weights;  // "a,b" filter
  int scenario = 0;     // 0: all
  std::string tiebreak = "best";
  std::string engine = "decomposition";
  double time_limit = 1200.0;
  double budget = 0.0;  // seconds for the whole sweep; 0 = none
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string csv;
  std::string plot_dir;
};

struct TableArgs {
  std::vector<std::string> csv;
  bool as_csv = false;
};

int cmd_generate(const GenerateArgs& a);
int cmd_solve(const SolveArgs& a);
int cmd_check(const CheckArgs& a);
int cmd_pospod(const PospodArgs& a);
int cmd_table(const TableArgs& a);

}  // namespace orscli
