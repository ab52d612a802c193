#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ors/analysis.hpp"
#include "ors/bnp.hpp"
#include "ors/compact.hpp"
#include "ors/follower.hpp"
#include "ors/instgen.hpp"
#include "ors/solution_io.hpp"

namespace fs = std::filesystem;
using namespace ors;

namespace orscli {

namespace {

Rational rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": expected a number or p/q, got '" + text + "'");
  }
}

Instance read_instance(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

// Appends to a CSV, writing the header when the file is new or empty.
class CsvAppender {
 public:
  CsvAppender(const std::string& path, const std::string& header) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    out_.open(path, std::ios::app);
    if (!out_) throw IoError("cannot open '" + path + "' for appending");
    if (fresh) out_ << header << '\n';
    out_.flush();
  }
  void row(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
    if (!out_) throw IoError("write failed");
  }

 private:
  std::ofstream out_;
};

// Runs work(i) for i in [0, n) on up to `jobs` threads. The first
// exception stops new work and is rethrown.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& work) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  const int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CutKind cut_kind_arg(const std::string& s) {
  if (s == "olc") return CutKind::Objective;
  if (s == "alc") return CutKind::Assignment;
  throw UsageError("--cuts must be olc or alc");
}

std::string cut_label(CutKind k) { return k == CutKind::Objective ? "OLC" : "ALC"; }

}  // namespace

int cmd_generate(const GenerateArgs& a) {
  if (a.count < 0) throw UsageError("--count must be >= 0");
  GenParams g;
  g.surgeons = a.surgeons;
  g.rooms = a.rooms;
  g.days = a.days;
  g.load_factor = rational_arg("lf", a.lf);
  g.alpha = rational_arg("alpha", a.alpha);
  g.beta = rational_arg("beta", a.beta);
  if (a.count == 0) return kOk;
  ensure_dir(a.out_dir);
  for (int i = 0; i < a.count; ++i) {
    g.seed = a.seed + static_cast<std::uint64_t>(i);
    Instance inst = [&] {
      try {
        return generate_instance(g);
      } catch (const GenerationError& e) {
        throw UsageError(e.what());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    const fs::path path = fs::path(a.out_dir) / (inst.name() + ".json");
    try {
      save_instance(inst, path);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    std::cout << path.string() << '\n';
  }
  return kOk;
}

int cmd_solve(const SolveArgs& a) {
  if (a.solver != "bnp" && a.solver != "compact") throw UsageError("--solver must be bnp or compact");
  const CutKind kind = cut_kind_arg(a.cuts);
  if (a.solver == "bnp" && !a.cut_scope.empty()) throw UsageError("--cut-scope applies to the compact solver only");
  if (a.solver == "compact" && (a.no_multi_pattern || a.no_lcr || a.no_initial_heuristic || a.pricing != "dp")) {
    throw UsageError("branch-and-price toggles do not apply to the compact solver");
  }
  if (!a.cut_scope.empty() && a.cut_scope != "all" && a.cut_scope != "first") {
    throw UsageError("--cut-scope must be all or first");
  }
  if (a.pricing != "dp" && a.pricing != "mip") throw UsageError("--pricing must be dp or mip");
  if (!a.out.empty() && a.instances.size() != 1) throw UsageError("--out needs exactly one instance; use --out-dir");
  if (a.time_limit <= 0) throw UsageError("--time-limit must be positive");

  std::vector<Instance> insts;
  for (const auto& p : a.instances) insts.push_back(read_instance(p));
  if (!a.out_dir.empty()) ensure_dir(a.out_dir);
  std::unique_ptr<CsvAppender> stats;
  if (!a.stats.empty()) stats = std::make_unique<CsvAppender>(a.stats, stats_csv_header());

  std::mutex io;
  std::atomic<int> breaches{0};
  parallel_for(insts.size(), a.jobs, [&](std::size_t i) {
    const Instance& inst = insts[i];
    SolveResult r;
    if (a.solver == "bnp") {
      BnpOptions o;
      o.cut_kind = kind;
      o.multi_pattern = !a.no_multi_pattern;
      o.use_lcr = !a.no_lcr;
      o.use_initial_heuristic = !a.no_initial_heuristic;
      o.pricing = a.pricing == "mip" ? PricingEngine::Mip : PricingEngine::Combinatorial;
      o.time_limit = a.time_limit;
      r = solve_bnp(inst, o);
    } else {
      CompactOptions o;
      o.cut_kind = kind;
      if (a.cut_scope == "first") o.cut_scope = CutScope::FirstViolated;
      o.time_limit = a.time_limit;
      r = solve_compact(inst, o);
    }

    std::string problem;
    if (a.verify && r.stats.feasible_found) {
      const auto single = check_single_level_feasibility(inst, r.assignment);
      if (!single.ok) problem = "assignment breaks a scheduling constraint";
      else if (!is_bilevel_feasible(inst, r.assignment)) problem = "assignment is not bilevel feasible";
      else if (leader_objective(inst, r.assignment) != r.stats.F) problem = "reported F does not match the assignment";
    }

    const SolutionFile sol = make_solution(inst, r.assignment, r.stats);
    fs::path target;
    if (!a.out.empty()) target = a.out;
    else if (!a.out_dir.empty()) target = fs::path(a.out_dir) / (fs::path(a.instances[i]).stem().string() + ".sol.json");

    std::lock_guard lock(io);
    if (!target.empty()) {
      try {
        save_solution(sol, target);
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
    }
    if (stats) stats->row(stats_csv_row(inst.name(), a.solver, cut_label(kind), r.stats));
    if (!a.quiet) {
      std::cout << inst.name() << ": " << to_string(r.stats.status)
                << " F=" << (r.stats.feasible_found ? to_string(r.stats.F) : std::string("none"))
                << " bound=" << r.stats.bound << " time=" << r.stats.t_total << "s\n";
    }
    if (!problem.empty()) {
      std::cerr << inst.name() << ": verification failed: " << problem << '\n';
      ++breaches;
    }
  });
  return breaches > 0 ? kBreach : kOk;
}

int cmd_check(const CheckArgs& a) {
  const Instance inst = read_instance(a.instance);
  SolutionFile sol;
  try {
    sol = load_solution(a.solution);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  std::vector<std::string> issues;
  Assignment asg;
  try {
    asg = to_assignment(inst, sol);
  } catch (const std::out_of_range& e) {
    throw BreachError(std::string("solution does not fit the instance: ") + e.what());
  }
  issues = rescore(inst, sol);
  const auto single = check_single_level_feasibility(inst, asg);
  if (!single.ok) issues.push_back("assignment breaks a scheduling constraint");
  for (const FollowerCheck& c : check_bilevel_feasibility(inst, asg)) {
    if (!c.feasible) {
      issues.push_back("surgeon " + std::to_string(c.surgeon) + " plan value " + std::to_string(c.f) +
                       " below follower optimum " + std::to_string(c.f_prime));
    }
  }
  for (const auto& s : issues) std::cerr << s << '\n';
  if (!issues.empty()) return kBreach;
  std::cout << inst.name() << ": ok, F=" << to_string(leader_objective(inst, asg)) << '\n';
  return kOk;
}

int cmd_pospod(const PospodArgs& a) {
  std::vector<ScenarioSpec> cells;
  std::optional<std::pair<Rational, Rational>> weights;
  if (!a.weights.empty()) {
    const auto comma = a.weights.find(',');
    if (comma == std::string::npos) throw UsageError("--weights expects alpha,beta");
    weights.emplace(rational_arg("weights", a.weights.substr(0, comma)),
                    rational_arg("weights", a.weights.substr(comma + 1)));
  }
  for (const ScenarioSpec& s : table_cells()) {
    if (weights && (s.alpha != weights->first || s.beta != weights->second)) continue;
    if (a.scenario != 0 && s.id != a.scenario) continue;
    cells.push_back(s);
  }
  if (cells.empty() && weights) {
    // Combinations outside the standard table are still allowed.
    if (a.scenario != 0) cells.push_back(ScenarioSpec::make(a.scenario, weights->first, weights->second));
    else for (int id = 1; id <= 5; ++id) cells.push_back(ScenarioSpec::make(id, weights->first, weights->second));
  }
  if (cells.empty()) throw UsageError("no scenario matches the filters");

  ScenarioOptions so;
  so.seed = a.seed;
  so.jobs = a.jobs;
  so.reference.time_limit = a.time_limit;
  if (a.engine == "mip") so.reference.engine = AnalysisEngine::Mip;
  else if (a.engine != "decomposition") throw UsageError("--engine must be decomposition or mip");
  if (a.tiebreak == "best") so.tiebreak = Tiebreak::LeaderBest;
  else if (a.tiebreak == "worst") so.tiebreak = Tiebreak::LeaderWorst;
  else if (a.tiebreak == "solver") so.tiebreak = Tiebreak::Solver;
  else throw UsageError("--tiebreak must be best, worst or solver");

  std::vector<Instance> insts;
  for (const auto& p : a.instances) insts.push_back(read_instance(p));

  std::unique_ptr<CsvAppender> csv;
  if (!a.csv.empty()) {
    if (fs::exists(a.csv)) fs::remove(a.csv);
    csv = std::make_unique<CsvAppender>(a.csv, scenario_csv_header());
  } else {
    std::cout << scenario_csv_header() << '\n';
  }

  // One instance at a time so rows reach disk as they finish.
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EquilibriumReport> all;
  bool stopped = false;
  for (const Instance& inst : insts) {
    if (a.budget > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >= a.budget) {
      stopped = true;
      break;
    }
    for (EquilibriumReport& r : run_scenarios(std::span<const Instance>(&inst, 1), cells, so)) {
      const std::string row = scenario_csv_row(r);
      if (csv) csv->row(row);
      else std::cout << row << '\n' << std::flush;
      all.push_back(std::move(r));
    }
  }
  if (stopped) std::cerr << "budget reached after " << all.size() / cells.size() << " instances\n";

  if (!a.plot_dir.empty()) {
    ensure_dir(a.plot_dir);
    // Mean PoS / PoD per scenario cell over finite, optimal entries.
    struct Acc {
      double pos = 0, pod = 0;
      int n = 0;
    };
    std::map<std::tuple<double, double, int>, Acc> acc;
    for (const EquilibriumReport& r : all) {
      auto& e = acc[{to_double(r.scenario.alpha), to_double(r.scenario.beta), r.scenario.id}];
      if (r.flagged() || r.pos.infinite || r.pod.infinite || r.central.F <= 0) continue;
      e.pos += r.pos.to_double();
      e.pod += r.pod.to_double();
      ++e.n;
    }
    std::map<std::pair<double, double>, std::ofstream> files;
    for (const auto& [key, e] : acc) {
      const auto [al, be, id] = key;
      auto it = files.find({al, be});
      if (it == files.end()) {
        std::ostringstream name;
        name << "pospod_a" << al << "_b" << be << ".dat";
        std::ofstream f(fs::path(a.plot_dir) / name.str());
        if (!f) throw IoError("cannot write plot data in '" + a.plot_dir + "'");
        f << "# scenario mean_PoS mean_PoD n\n";
        it = files.emplace(std::make_pair(al, be), std::move(f)).first;
      }
      it->second << id << ' ' << (e.n ? e.pos / e.n : 0.0) << ' ' << (e.n ? e.pod / e.n : 0.0) << ' ' << e.n << '\n';
    }
  }
  return kOk;
}

}  // namespace orscli
