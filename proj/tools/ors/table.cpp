// Summary table over stats CSV files, one row per (solver, cut kind).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "ors/solution_io.hpp"

namespace orscli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double num(const std::string& s) { return s.empty() ? 0.0 : std::stod(s); }

struct Group {
  int runs = 0;
  int opt = 0;
  int feas = 0;
  double gap = 0;
  // n_cgi .. t_total, in header order
  std::vector<double> sums = std::vector<double>(9, 0.0);
};

}  // namespace

int cmd_table(const TableArgs& a) {
  const std::vector<std::string> header = split(ors::stats_csv_header());
  std::map<std::pair<std::string, std::string>, Group> groups;
  for (const std::string& path : a.csv) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto cells = split(line);
      if (cells == header) continue;
      if (cells.size() != header.size()) {
        throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) + " columns");
      }
      Group& g = groups[{cells[1], cells[2]}];
      try {
        ++g.runs;
        g.opt += cells[7] == "1";
        g.feas += cells[8] == "1";
        g.gap += num(cells[6]);
        for (std::size_t k = 0; k < g.sums.size(); ++k) g.sums[k] += num(cells[9 + k]);
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(lineno) + ": malformed number");
      }
    }
  }

  const std::vector<std::string> cols{"solver", "cuts", "runs", "pct_opt", "pct_feas", "gap_pct", "n_cgi", "n_cols",
                                      "n_lcs",  "n_cbs", "n_nodes", "t_cb", "t_sp", "t_mp", "t_total"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& [key, g] : groups) {
    std::vector<std::string> r{key.first, key.second, std::to_string(g.runs)};
    auto fmt = [](double v, int d) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(d) << v;
      return os.str();
    };
    const double n = g.runs;
    r.push_back(fmt(100.0 * g.opt / n, 1));
    r.push_back(fmt(100.0 * g.feas / n, 1));
    r.push_back(fmt(g.gap / n, 2));
    for (std::size_t k = 0; k < g.sums.size(); ++k) r.push_back(fmt(g.sums[k] / n, k < 5 ? 1 : 3));
    rows.push_back(std::move(r));
  }

  if (a.as_csv) {
    for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << cols[c];
    std::cout << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) std::cout << (c ? "," : "") << r[c];
      std::cout << '\n';
    }
    return kOk;
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto print = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::cout << (c ? "  " : "") << (c < 2 ? std::left : std::right) << std::setw(static_cast<int>(width[c])) << r[c];
    }
    std::cout << '\n';
  };
  print(cols);
  for (const auto& r : rows) print(r);
  return kOk;
}

}  // namespace orscli
