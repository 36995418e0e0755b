// Experiment runner for the built-in population balance benchmarks: builds
// the truncated series solution, optionally optimizes the convergence
// control parameter, and emits density / moment / error-norm tables plus
// plot-ready reference data.

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "pbe/analytic.hpp"
#include "pbe/errors.hpp"
#include "pbe/examples.hpp"
#include "pbe/fvm.hpp"
#include "pbe/hopt.hpp"
#include "pbe/serialize.hpp"
#include "pbe/simd/kernels.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliConfig {
  std::string example = "4.1";
  int terms = 3;
  double h = -1.0;
  bool optimize = false;
  std::string h_bracket = "-2,-0.001";
  std::string residual_grid;  // K,smax,tmax ; tmax defaults to the horizon
  std::string error_grid = "1000,10";
  std::string format = "csv";
  std::string out_dir = "out";
  int fvm_cells = 400;
  std::string mode = "aham";
  std::string simd = "auto";

  std::string canonical() const {
    std::ostringstream os;
    os << "example=" << example << ";terms=" << terms << ";h="
       << (optimize ? std::string("optimize") : pbe::format_double(h))
       << ";bracket=" << h_bracket << ";residual=" << residual_grid
       << ";error=" << error_grid << ";format=" << format << ";fvm_cells=" << fvm_cells
       << ";mode=" << mode;
    return os.str();
  }
};

std::vector<double> parse_doubles(const std::string& text, std::size_t expect,
                                  const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != expect)
    throw CLI::ValidationError(what + ": expected " + std::to_string(expect) + " comma-separated values");
  return out;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  std::string to_csv() const {
    std::string s;
    for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      s += columns[i] + (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i)
        s += pbe::format_double(row[i]) + (i + 1 < row.size() ? "," : "\n");
    return s;
  }

  json to_json() const {
    json meta_obj = json::object();
    for (const auto& [k, v] : meta) meta_obj[k] = v;
    json rows_arr = json::array();
    for (const auto& row : rows) {
      json r = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) r[columns[i]] = row[i];
      rows_arr.push_back(r);
    }
    return json{{"metadata", meta_obj}, {"rows", rows_arr}};
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_table(const Table& t, const fs::path& dir, const std::string& stem,
                 const std::string& format) {
  if (format == "json")
    write_text(dir / (stem + ".json"), t.to_json().dump(2) + "\n");
  else
    write_text(dir / (stem + ".csv"), t.to_csv());
}

// Piecewise-linear read of a sectional snapshot.
double sample_cells(const pbe::CellSolution& cells, double s) {
  const auto& x = cells.grid.centers;
  if (s <= x.front()) return cells.values.front();
  if (s >= x.back()) return 0.0;
  const auto it = std::upper_bound(x.begin(), x.end(), s);
  const std::size_t k = it - x.begin() - 1;
  const double f = (s - x[k]) / (x[k + 1] - x[k]);
  return (1.0 - f) * cells.values[k] + f * cells.values[k + 1];
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

int run(const CliConfig& cfg) {
  using namespace pbe;

  if (cfg.simd != "auto") {
    const auto backend = cfg.simd == "avx2" ? simd::Backend::avx2 : simd::Backend::scalar;
    if (!simd::set_backend(backend)) {
      std::cerr << "simd backend '" << cfg.simd << "' not available on this CPU\n";
      return 1;
    }
  }

  const ExampleCase& ex = example_case(cfg.example);
  const ProblemSpec& problem = ex.problem;
  const SeriesMode mode = parse_mode(cfg.mode);
  const int K = cfg.terms;
  if (K < 1) throw std::invalid_argument("--terms must be >= 1");

  const auto bracket = parse_doubles(cfg.h_bracket, 2, "--h-bracket");

  ResidualGrid rgrid = ResidualGrid::uniform(20, 10.0, problem.t_max);
  if (!cfg.residual_grid.empty()) {
    const auto v = parse_doubles(cfg.residual_grid, 3, "--residual-grid");
    rgrid = ResidualGrid::uniform(static_cast<int>(v[0]), v[1], v[2]);
  }
  const auto egrid = parse_doubles(cfg.error_grid, 2, "--error-grid");
  const int err_cells = static_cast<int>(egrid[0]);
  const double err_smax = egrid[1];

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);

  // --- choose h ------------------------------------------------------------
  std::optional<OptimizeResult> hopt;
  std::vector<std::pair<int, OptimizeResult>> hopt_per_order;
  double h_used = cfg.h;
  if (cfg.optimize) {
    for (int k = 1; k <= K; ++k)
      hopt_per_order.emplace_back(k, optimize_h(problem, rgrid, k, bracket[0], bracket[1], mode));
    hopt = hopt_per_order.back().second;
    h_used = hopt->h_star;
  }
  if (h_used == 0.0) throw std::invalid_argument("h must be nonzero");

  const SeriesSolution sol = iterate_series(problem, h_used, K, mode);

  // --- shared metadata -------------------------------------------------------
  const std::string hash = std::to_string(fnv1a(cfg.canonical()));
  std::vector<std::pair<std::string, std::string>> meta = {
      {"config_hash", hash},
      {"example", ex.id},
      {"title", ex.title},
      {"mode", cfg.mode},
      {"terms", std::to_string(K)},
      {"h", format_double(h_used)},
      {"h_mode", cfg.optimize ? "optimize" : "fixed"},
      {"residual_grid", std::to_string(rgrid.resolution()) + "," +
                            format_double(rgrid.s_nodes.back()) + "," +
                            format_double(rgrid.t_nodes.back())},
      {"error_grid", std::to_string(err_cells) + "," + format_double(err_smax)},
      {"term_budget", std::to_string(term_budget())},
      {"simd", simd::backend_name(simd::active_backend())},
  };

  // --- time levels -----------------------------------------------------------
  std::vector<double> table_taus;
  for (double t = 0.5; t <= problem.t_max + 1e-12; t += 0.5) table_taus.push_back(t);
  std::vector<double> moment_taus;
  for (double t = 0.0; t <= problem.t_max + 1e-12; t += 0.25) moment_taus.push_back(t);

  // --- reference -------------------------------------------------------------
  // Closed form when the problem has one, otherwise the sectional solver on
  // the default truncated domain.
  std::map<double, CellSolution> fvm_at;
  const bool use_fvm = !ex.exact.has_value();
  if (use_fvm) {
    std::vector<double> times = table_taus;
    for (double t : moment_taus)
      if (t > 0.0) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const SizeGrid grid =
        SizeGrid::build(1e-3, 60.0, cfg.fvm_cells, SizeGrid::Kind::geometric);
    const auto snaps =
        fvm_solve_snapshots(problem.split.kernel, problem.split.breakage,
                            [&](double s) { return problem.c0(s); }, grid, times, 0.01);
    for (const auto& snap : snaps) fvm_at.emplace(snap.time, snap);
    write_text(dir / "fvm_reference.csv", to_csv(fvm_at.at(table_taus.back())));
  }

  auto reference = [&](double s, double tau) -> double {
    if (ex.exact) return exact_density(*ex.exact, s, tau);
    return sample_cells(fvm_at.at(tau), s);
  };

  // --- density table -----------------------------------------------------------
  Table density;
  density.meta = meta;
  density.meta.emplace_back("reference", ex.exact ? "exact" : "fvm");
  density.columns = {"s", "tau", "approx", "reference", "abs_error"};
  const std::vector<double> table_s = linspace(0.0, 10.0, 21);
  for (double tau : table_taus) {
    const ExpPoly psi_tau = sol.partial_sum(K + 1).at_time(tau);
    std::vector<double> approx(table_s.size());
    evaluate_many(psi_tau, table_s, approx);
    for (std::size_t i = 0; i < table_s.size(); ++i) {
      const double ref = reference(table_s[i], tau);
      density.rows.push_back({table_s[i], tau, approx[i], ref, std::abs(approx[i] - ref)});
    }
  }
  write_table(density, dir, "density", cfg.format);

  // --- moment table ------------------------------------------------------------
  Table moments;
  moments.meta = meta;
  moments.columns = {"tau", "j", "approx", "exact"};
  for (double tau : moment_taus)
    for (int j = 0; j <= 1; ++j) {
      const double approx = sol.moment(j, tau, K + 1);
      double ref;
      if (tau == 0.0)
        ref = moment(problem.c0, j);
      else if (ex.exact)
        ref = exact_moment(*ex.exact, j, tau);
      else
        ref = fvm_at.at(tau).moment(j);
      moments.rows.push_back({tau, static_cast<double>(j), approx, ref});
    }
  write_table(moments, dir, "moments", cfg.format);

  // --- error-norm table -----------------------------------------------------------
  // Discrete L1 norm over uniform cells on [0, err_smax]: one column per
  // truncation 2..K+1; with h optimization each truncation uses its own h*.
  Table errors;
  errors.meta = meta;
  errors.columns = {"tau"};
  for (int n = 2; n <= K + 1; ++n) errors.columns.push_back("terms_" + std::to_string(n));

  std::vector<double> mids(err_cells);
  const double width = err_smax / err_cells;
  for (int i = 0; i < err_cells; ++i) mids[i] = (i + 0.5) * width;

  std::vector<SeriesSolution> per_order;
  if (cfg.optimize)
    for (int k = 1; k <= K; ++k)
      per_order.push_back(iterate_series(problem, hopt_per_order[k - 1].second.h_star, k, mode));

  for (double tau : table_taus) {
    std::vector<double> row = {tau};
    std::vector<double> ref(mids.size());
    for (std::size_t i = 0; i < mids.size(); ++i) ref[i] = reference(mids[i], tau);
    std::vector<double> approx(mids.size());
    for (int n = 2; n <= K + 1; ++n) {
      const SeriesSolution& s_n = cfg.optimize ? per_order[n - 2] : sol;
      evaluate_many(s_n.partial_sum(n).at_time(tau), mids, approx);
      double norm = 0.0;
      for (std::size_t i = 0; i < mids.size(); ++i) norm += std::abs(approx[i] - ref[i]) * width;
      row.push_back(norm);
    }
    errors.rows.push_back(row);
  }
  write_table(errors, dir, "error_norm", cfg.format);

  // --- optimizer report -----------------------------------------------------------
  if (cfg.optimize) {
    json report = json::object();
    report["config_hash"] = hash;
    report["final"] = to_json(*hopt);
    json per = json::array();
    for (const auto& [k, r] : hopt_per_order)
      per.push_back({{"terms", k}, {"h_star", r.h_star}, {"E_star", r.e_star}});
    report["per_order"] = per;
    write_text(dir / "hopt.json", report.dump(2) + "\n");
  }

  // --- series export -----------------------------------------------------------
  json series = to_json(sol);
  series["config_hash"] = hash;
  series["example"] = ex.id;
  write_text(dir / "solution.json", series.dump(2) + "\n");

  std::cout << "example " << ex.id << " (" << ex.title << ")\n"
            << "  mode=" << cfg.mode << " terms=" << K << " h=" << format_double(h_used)
            << (cfg.optimize ? " (optimized)" : "") << "\n"
            << "  outputs in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"series solutions of aggregation and aggregation-breakage population balances"};
  CliConfig cfg;

  app.add_option("--example", cfg.example, "benchmark id (4.1 .. 4.7)")->required();
  app.add_option("--terms", cfg.terms, "truncation order K (series has K+1 terms)");
  auto* fixed_h = app.add_option("--h", cfg.h, "fixed convergence control parameter");
  auto* opt_h = app.add_flag("--optimize-h", cfg.optimize,
                             "minimize the discrete squared residual over h");
  opt_h->excludes(fixed_h);
  app.add_option("--h-bracket", cfg.h_bracket, "optimizer bracket lo,hi (default -2,-0.001)");
  app.add_option("--residual-grid", cfg.residual_grid,
                 "residual grid K,smax,tmax (default 20,10,<horizon>)");
  app.add_option("--error-grid", cfg.error_grid, "error norm grid K,smax (default 1000,10)");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--fvm-cells", cfg.fvm_cells, "cells for the sectional reference");
  app.add_option("--mode", cfg.mode, "aham or classic")
      ->check(CLI::IsMember({"aham", "classic"}));
  app.add_option("--simd", cfg.simd, "numeric backend: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  CLI11_PARSE(app, argc, argv);

  try {
    return run(cfg);
  } catch (const pbe::algebra_error& e) {
    std::cerr << "algebra error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
