#include "ors/solution_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <sstream>

#include "json.hpp"
#include "ors/instgen.hpp"

namespace ors {

using json = nlohmann::json;

SolutionFile make_solution(const Instance& inst, const Assignment& a, const SolveStats& stats) {
  SolutionFile sol;
  sol.instance_id = inst.name();
  sol.status = to_string(stats.status);
  sol.F = leader_objective(inst, a);
  sol.bound = stats.bound;
  for (int s = 0; s < a.num_surgeons(); ++s) {
    for (int b : a.blocks_of(s)) sol.y.emplace_back(s, b);
    sol.f.emplace_back(s, follower_objective(inst, s, a));
  }
  for (int p = 0; p < a.num_patients(); ++p) {
    for (int b : a.blocks_of_patient(p)) sol.x.emplace_back(p, b);
  }
  return sol;
}

std::string solution_to_json(const SolutionFile& sol) {
  json j;
  j["instance_id"] = sol.instance_id;
  j["status"] = sol.status;
  j["F"] = to_string(sol.F);
  j["bound"] = std::isfinite(sol.bound) ? json(sol.bound) : json(nullptr);
  j["y"] = json::array();
  for (const auto& [s, b] : sol.y) j["y"].push_back({s, b});
  j["x"] = json::array();
  for (const auto& [p, b] : sol.x) j["x"].push_back({p, b});
  j["f"] = json::array();
  for (const auto& [s, v] : sol.f) j["f"].push_back({s, v});
  return j.dump(2) + "\n";
}

namespace {

template <typename T>
std::vector<std::pair<int, T>> pairs(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
  std::vector<std::pair<int, T>> out;
  for (const json& e : j[key]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ParseError(std::string("entries of '") + key + "' must be integer pairs");
    }
    out.emplace_back(e[0].get<int>(), e[1].get<T>());
  }
  return out;
}

}  // namespace

SolutionFile solution_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed solution: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("solution document must be a JSON object");
  SolutionFile sol;
  try {
    sol.instance_id = j.at("instance_id").get<std::string>();
    sol.status = j.at("status").get<std::string>();
    sol.F = parse_rational(j.at("F").get<std::string>());
    const json& b = j.at("bound");
    sol.bound = b.is_null() ? std::numeric_limits<double>::infinity() : b.get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad solution header: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad field 'F': ") + e.what());
  }
  sol.y = pairs<int>(j, "y");
  sol.x = pairs<int>(j, "x");
  sol.f = pairs<std::int64_t>(j, "f");
  return sol;
}

void save_solution(const SolutionFile& sol, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << solution_to_json(sol);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SolutionFile load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return solution_from_json(ss.str());
}

Assignment to_assignment(const Instance& inst, const SolutionFile& sol) {
  Assignment a(inst);
  for (const auto& [s, b] : sol.y) {
    if (s < 0 || s >= inst.num_surgeons() || b < 0 || b >= inst.num_blocks()) throw std::out_of_range("y entry out of range");
    a.assign_block(s, b);
  }
  for (const auto& [p, b] : sol.x) {
    if (p < 0 || p >= inst.num_patients() || b < 0 || b >= inst.num_blocks()) throw std::out_of_range("x entry out of range");
    a.assign_patient(p, b);
  }
  return a;
}

std::vector<std::string> rescore(const Instance& inst, const SolutionFile& sol) {
  std::vector<std::string> issues;
  const Assignment a = to_assignment(inst, sol);
  const Rational F = leader_objective(inst, a);
  if (F != sol.F) issues.push_back("F recorded " + to_string(sol.F) + ", recomputed " + to_string(F));
  for (const auto& [s, v] : sol.f) {
    if (s < 0 || s >= inst.num_surgeons()) {
      issues.push_back("f entry for unknown surgeon " + std::to_string(s));
      continue;
    }
    const std::int64_t got = follower_objective(inst, s, a);
    if (got != v) {
      issues.push_back("f_" + std::to_string(s) + " recorded " + std::to_string(v) + ", recomputed " + std::to_string(got));
    }
  }
  return issues;
}

std::string stats_csv_header() {
  return "instance_id,solver,cut_kind,status,F,F_lpr,gap_pct,opt,feas,n_cgi,n_cols,n_lcs,n_cbs,n_nodes,t_cb,t_sp,t_mp,"
         "t_total";
}

namespace {

std::string num(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string stats_csv_row(const std::string& instance_id, const std::string& solver, const std::string& cut_kind,
                          const SolveStats& st) {
  std::string row = instance_id + "," + solver + "," + cut_kind + "," + to_string(st.status) + ",";
  row += (st.feasible_found ? num(to_double(st.F), 4) : std::string()) + ",";
  row += num(st.F_lpr, 4) + "," + num(st.gap_root_pct, 2) + ",";
  row += std::string(st.optimal() ? "1" : "0") + "," + (st.feasible_found ? "1" : "0") + ",";
  row += std::to_string(st.n_cgi) + "," + std::to_string(st.n_cols) + "," + std::to_string(st.n_lcs) + "," +
         std::to_string(st.n_cbs) + "," + std::to_string(st.n_nodes) + ",";
  row += num(st.t_cb, 3) + "," + num(st.t_sp, 3) + "," + num(st.t_mp, 3) + "," + num(st.t_total, 3);
  return row;
}

}  // namespace ors
