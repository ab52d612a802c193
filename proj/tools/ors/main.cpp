#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace orscli;

int main(int argc, char** argv) {
  CLI::App app{"Operating room block scheduling with a surgeon-head leader and surgeon followers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write random instances as JSON files");
  g->add_option("--surgeons", gen.surgeons)->check(CLI::PositiveNumber);
  g->add_option("--rooms", gen.rooms)->check(CLI::PositiveNumber);
  g->add_option("--days", gen.days)->check(CLI::PositiveNumber);
  g->add_option("--lf", gen.lf, "Load factor, decimal or p/q");
  g->add_option("--alpha", gen.alpha, "Weight of idle time");
  g->add_option("--beta", gen.beta, "Weight of omitted leader priority");
  g->add_option("--count", gen.count, "Number of instances; seeds run from --seed upwards");
  g->add_option("--seed", gen.seed);
  g->add_option("-o,--out-dir", gen.out_dir);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve instances to bilevel optimality");
  s->add_option("instances", sol.instances, "Instance files")->required();
  s->add_option("--solver", sol.solver, "bnp or compact")->check(CLI::IsMember({"bnp", "compact"}));
  s->add_option("--cuts", sol.cuts, "olc or alc")->check(CLI::IsMember({"olc", "alc"}));
  s->add_option("--cut-scope", sol.cut_scope, "compact only: all or first")->check(CLI::IsMember({"all", "first"}));
  s->add_flag("--no-multi-pattern", sol.no_multi_pattern, "Add one column per surgeon and iteration at most");
  s->add_flag("--no-lcr", sol.no_lcr, "Forget lazy cuts between pricing calls");
  s->add_flag("--no-initial-heuristic", sol.no_initial_heuristic);
  s->add_option("--pricing", sol.pricing, "dp or mip")->check(CLI::IsMember({"dp", "mip"}));
  s->add_option("--time-limit", sol.time_limit, "Seconds per instance");
  s->add_option("-o,--out", sol.out, "Solution file (single instance)");
  s->add_option("--out-dir", sol.out_dir, "Directory for <instance>.sol.json files");
  s->add_option("--stats", sol.stats, "Append a statistics row per run to this CSV");
  s->add_flag("--verify", sol.verify, "Re-check the returned assignment; exit 3 on violation");
  s->add_option("-j,--jobs", sol.jobs, "Instances solved in parallel")->check(CLI::PositiveNumber);
  s->add_flag("-q,--quiet", sol.quiet);

  CheckArgs chk;
  auto* c = app.add_subcommand("check", "Re-score a solution file and check bilevel feasibility");
  c->add_option("instance", chk.instance)->required();
  c->add_option("solution", chk.solution)->required();

  PospodArgs pp;
  auto* p = app.add_subcommand("pospod", "Price of stability and decentralisation over scenario cells");
  p->add_option("instances", pp.instances, "Instance files");
  p->add_option("--weights", pp.weights, "Only cells with these weights, alpha,beta");
  p->add_option("--scenario", pp.scenario, "Only this scenario id")->check(CLI::Range(1, 5));
  p->add_option("--tiebreak", pp.tiebreak, "best, worst or solver")->check(CLI::IsMember({"best", "worst", "solver"}));
  p->add_option("--engine", pp.engine, "decomposition or mip")->check(CLI::IsMember({"decomposition", "mip"}));
  p->add_option("--time-limit", pp.time_limit, "Seconds per reference solve");
  p->add_option("--budget", pp.budget, "Stop starting new instances after this many seconds");
  p->add_option("--seed", pp.seed, "Priority draw seed");
  p->add_option("-j,--jobs", pp.jobs)->check(CLI::PositiveNumber);
  p->add_option("--csv", pp.csv, "Output CSV (default: stdout)");
  p->add_option("--plot-dir", pp.plot_dir, "Write per-scenario mean PoS/PoD columns here");

  TableArgs tab;
  auto* t = app.add_subcommand("table", "Aggregate stats CSV files by solver and cut kind");
  t->add_option("files", tab.csv, "Stats CSV files")->required();
  t->add_flag("--csv", tab.as_csv, "Print CSV instead of aligned text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*c) return cmd_check(chk);
    if (*p) return cmd_pospod(pp);
    if (*t) return cmd_table(tab);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const BreachError& e) {
    std::cerr << "invariant breach: " << e.what() << '\n';
    return kBreach;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kBreach;
  }
  return kUsage;
}
