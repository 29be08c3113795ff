#include "fermatcount/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fermatcount/arith.hpp"
#include "fermatcount/bundle.hpp"
#include "fermatcount/counting.hpp"
#include "fermatcount/densities.hpp"
#include "fermatcount/sums.hpp"

namespace fermat {

namespace {

// Exact quantities are rendered as integers or rational strings; floats
// (archimedean densities, fitted coefficients, error terms) get 12
// significant digits.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::string>& row() {
    rows.emplace_back();
    return rows.back();
  }
};

void emit(const Table& tab, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    for (size_t i = 0; i < tab.columns.size(); i++)
      out << (i ? "," : "") << tab.columns[i];
    out << "\n";
    for (auto& r : tab.rows) {
      if (r.size() != tab.columns.size()) throw internal_error("ragged table");
      for (size_t i = 0; i < r.size(); i++) out << (i ? "," : "") << r[i];
      out << "\n";
    }
    return;
  }
  nlohmann::json j;
  j["columns"] = tab.columns;
  j["rows"] = nlohmann::json::array();
  for (auto& r : tab.rows) {
    if (r.size() != tab.columns.size()) throw internal_error("ragged table");
    j["rows"].push_back(r);
  }
  out << j.dump(2) << "\n";
}

Table cmd_count(const RunConfig& cfg, bool on_x) {
  CountReport r = on_x ? count_NX_direct(cfg.bound, cfg.workers)
                       : count_N(cfg.bound, cfg.workers);
  Table tab;
  tab.columns = {"bound", "count", "excluded_on_lines", "method"};
  auto& row = tab.row();
  row = {std::to_string(r.bound), std::to_string(r.count),
         std::to_string(r.excluded_on_lines), r.method};
  return tab;
}

Table cmd_fibration(const RunConfig& cfg) {
  CountReport r = count_NX_fibration(cfg.bound, cfg.workers);
  Table tab;
  tab.columns = {"t", "s", "points"};
  for (auto& fc : r.breakdown)
    tab.row() = {std::to_string(fc.t), std::to_string(fc.s),
                 std::to_string(fc.points)};
  return tab;
}

Table cmd_density(const RunConfig& cfg) {
  Fibre f = fibre(cfg.s, cfg.t);
  Table tab;
  tab.columns = {"p", "value", "stabilized_at"};
  if (cfg.p > 0) {
    auto d = sigma_p(f, cfg.p);
    tab.row() = {std::to_string(cfg.p), rat_str(d.value),
                 std::to_string(d.stabilized_at)};
    return tab;
  }
  i64 pmax = cfg.pmax > 0 ? cfg.pmax : 50;
  for (i64 p : primes_to(pmax)) {
    if (p > pmax) break;
    auto d = sigma_p(f, p);
    tab.row() = {std::to_string(p), rat_str(d.value),
                 std::to_string(d.stabilized_at)};
  }
  tab.row() = {"inf", fmt(sigma_infinity(f).value), "0"};
  return tab;
}

Table cmd_dsum(const RunConfig& cfg) {
  DyadicSum d = gfrak_lower(cfg.x);
  Table tab;
  tab.columns = {"kind", "n", "value"};
  for (auto& [n, level] : d.levels) {
    tab.row() = {"dsum", std::to_string(n), rat_str(level)};
    tab.row() = {"scaled", std::to_string(n),
                 rat_str(level * rat(1, (i64)1 << (2 * n)))};
  }
  tab.row() = {"aggregate", "0", rat_str(d.aggregate)};
  return tab;
}

Table cmd_progsum(const RunConfig& cfg) {
  ProgressionQuery q{cfg.x, cfg.modulus, cfg.residue, 1, false};
  ProgressionSum r = progression_sum(q);
  Table tab;
  tab.columns = {"x", "q", "a", "exact", "main", "error", "normalized"};
  tab.row() = {std::to_string(cfg.x),        std::to_string(cfg.modulus),
               std::to_string(cfg.residue),  std::to_string(r.exact_int),
               fmt(r.main_term),             fmt(r.error),
               fmt(r.normalized)};
  return tab;
}

Table cmd_pairsum(const RunConfig& cfg) {
  PairSumQuery q{cfg.x, cfg.x, cfg.modulus, cfg.s, cfg.t, 1};
  PairSum r = coprime_pair_sum(q, gclass_r_tilde(), gclass_r_tilde());
  Table tab;
  tab.columns = {"x", "y", "q", "sigma", "tau", "exact", "main", "ratio"};
  tab.row() = {std::to_string(cfg.x), std::to_string(cfg.x),
               std::to_string(cfg.modulus), std::to_string(cfg.s),
               std::to_string(cfg.t), fmt(r.exact), fmt(r.main_term),
               fmt(r.ratio)};
  return tab;
}

Table cmd_bt(const RunConfig& cfg) {
  Table tab;
  if (cfg.twist.empty()) {
    BundleCount full = count_bt(cfg.bound, false, cfg.workers);
    BundleCount open = count_bt(cfg.bound, true, cfg.workers);
    tab.columns = {"bound", "pairs", "count", "pairs_nozero", "count_nozero"};
    tab.row() = {std::to_string(full.bound), std::to_string(full.pairs),
                 rat_str(full.value()), std::to_string(open.pairs),
                 rat_str(open.value())};
    return tab;
  }
  if (cfg.twist.size() != 4)
    throw std::invalid_argument("twist needs exactly four coordinates");
  TwistVector tw{{cfg.twist[0], cfg.twist[1], cfg.twist[2], cfg.twist[3]}};
  tab.columns = {"bound", "t0", "t1", "t2", "t3",
                 "scale", "points", "points_off_lines"};
  tab.row() = {std::to_string(cfg.bound),
               std::to_string(tw.t.x0),
               std::to_string(tw.t.x1),
               std::to_string(tw.t.x2),
               std::to_string(tw.t.x3),
               std::to_string(tw.scale()),
               std::to_string(count_on_twist(tw, cfg.bound, false)),
               std::to_string(count_on_twist(tw, cfg.bound, true))};
  return tab;
}

Table cmd_fit(const RunConfig& cfg) {
  if (cfg.in_path.empty())
    throw std::invalid_argument("fit needs an input table (--in)");
  std::ifstream in(cfg.in_path);
  if (!in) throw std::invalid_argument("cannot open " + cfg.in_path);
  std::vector<std::pair<i64, double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
    try {
      size_t ai = 0, bi = 0;
      i64 bound = std::stoll(a, &ai);
      double count = std::stod(b, &bi);
      if (ai != a.size() || bi != b.size()) continue;  // header row
      samples.push_back({bound, count});
    } catch (const std::exception&) {
      continue;  // header row
    }
  }
  LogPowerFit fit = fit_log_power(samples);
  Table tab;
  tab.columns = {"c0", "c1", "c2", "c3", "rms_residual"};
  tab.row() = {fmt(fit.c0), fmt(fit.c1), fmt(fit.c2), fmt(fit.c3),
               fmt(fit.rms_residual)};
  return tab;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    if (cfg.format != "csv" && cfg.format != "json")
      throw std::invalid_argument("format must be csv or json");
    Table tab;
    if (cfg.command == "count")
      tab = cmd_count(cfg, false);
    else if (cfg.command == "countx")
      tab = cmd_count(cfg, true);
    else if (cfg.command == "fibration")
      tab = cmd_fibration(cfg);
    else if (cfg.command == "density")
      tab = cmd_density(cfg);
    else if (cfg.command == "dsum")
      tab = cmd_dsum(cfg);
    else if (cfg.command == "progsum")
      tab = cmd_progsum(cfg);
    else if (cfg.command == "pairsum")
      tab = cmd_pairsum(cfg);
    else if (cfg.command == "bt")
      tab = cmd_bt(cfg);
    else if (cfg.command == "fit")
      tab = cmd_fit(cfg);
    else
      throw std::invalid_argument("unknown command: " + cfg.command);

    if (!cfg.out_path.empty()) {
      std::ofstream f(cfg.out_path);
      if (!f) throw std::invalid_argument("cannot open " + cfg.out_path);
      emit(tab, cfg.format, f);
    } else {
      emit(tab, cfg.format, out);
    }
    return 0;
  } catch (const internal_error& e) {
    diag << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fermat
