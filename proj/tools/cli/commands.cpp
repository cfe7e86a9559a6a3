#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "records.hpp"
#include "uwell/error.hpp"
#include "uwell/evolution.hpp"
#include "uwell/renorm.hpp"
#include "uwell/spectrum.hpp"
#include "uwell/version.hpp"

namespace uwell::cli {
namespace {

struct Common {
  double a = 50.0;
  double dx = 0.001;
  double h = 0.0;
  double tol = 1e-8;
  int max_iters = 200000;
  double coarsest_dx = 0.016;
  std::string route = "auto";
  bool json = false;
  bool csv = false;
  bool full_precision = false;
  bool timing = false;

  int digits() const { return full_precision ? 0 : 6; }
  SolverParams params() const {
    SolverParams p;
    p.h = h;
    p.eig_tol = tol;
    p.max_iters = max_iters;
    return p;
  }
  CascadeOptions cascade() const {
    CascadeOptions c;
    c.coarsest_dx = coarsest_dx;
    return c;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--a", c.a, "integration cutoff")->capture_default_str();
  cmd->add_option("--dx", c.dx, "grid step")->capture_default_str();
  cmd->add_option("--h", c.h, "evolution step (0: dx/4)")->capture_default_str();
  cmd->add_option("--tol", c.tol, "tolerance on successive estimates")
      ->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters)->capture_default_str();
  cmd->add_option("--coarsest-dx", c.coarsest_dx, "coarsest warm-up step (0: none)")
      ->capture_default_str();
  cmd->add_option("--route", c.route, "l = 0 route")
      ->check(CLI::IsMember({"auto", "oned", "direct"}))
      ->capture_default_str();
  auto* j = cmd->add_flag("--json", c.json, "JSON output (default)");
  auto* s = cmd->add_flag("--csv", c.csv, "CSV output");
  j->excludes(s);
  cmd->add_flag("--full-precision", c.full_precision);
  cmd->add_flag("--timing", c.timing, "add wall-clock duration to records");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Sector sector_for(int l, const std::string& route) {
  if (l < 0 || l > 2) throw UsageError("--l must be 0, 1 or 2");
  if (l == 0) return route == "direct" ? Sector::l0_direct : Sector::oned_odd;
  if (route != "auto") throw UsageError("--route applies to l = 0 only");
  return l == 1 ? Sector::l1 : Sector::l2;
}

void emit(std::ostream& out, const Common& c, const std::vector<Json>& rows) {
  if (c.csv) {
    write_csv(out, rows, c.digits());
  } else {
    write_json(out, rows, c.digits());
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in --v0-list");
    }
  }
  if (out.empty()) throw UsageError("--v0-list is empty");
  return out;
}

std::vector<SectorCount> parse_sectors(const std::string& text,
                                       const std::string& route) {
  std::vector<SectorCount> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || item.size() < 2 || item[0] != 'l') {
      throw UsageError("bad sector spec '" + item + "' (expected lL:count)");
    }
    int l = 0;
    int count = 0;
    try {
      l = std::stoi(item.substr(1, colon - 1));
      count = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("bad sector spec '" + item + "'");
    }
    if (count < 1) throw UsageError("sector count must be >= 1");
    out.push_back({sector_for(l, l == 0 ? route : "auto"), count});
  }
  if (out.empty()) throw UsageError("--sectors is empty");
  return out;
}

void dump_eigenfunction(const std::string& path, const EigenResult& r) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  const SectorState& s = r.eigenfunction;
  char line[128];
  f << "# sector=" << to_string(r.sector) << " n=" << r.n
    << " normalization: sum_j " << weight_prefactor(r.sector) << " * |r_j|^"
    << weight_exponent(r.sector) << " * f(r_j)^2 * dx = 1\n";
  f << "r,f(r)\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.grid().node(j), s[j]);
    f << line;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of the ultrarelativistic finite well", "uwell"};
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common c;
  double v0 = 0.0;
  int l = 0;
  int n = 1;
  int m = 0;
  std::string dump_path;

  auto* solve = app.add_subcommand("solve", "converge one state and judge it");
  solve->add_option("--v0", v0, "well height")->required();
  solve->add_option("--l", l, "orbital index")->required();
  solve->add_option("--n", n, "state index within the sector")->capture_default_str();
  solve->add_option("--dump-eigenfunction", dump_path, "write r,f(r) to PATH");
  add_common(solve, c);

  double v0_from = 0.0;
  double v0_to = 0.0;
  double step = 0.1;
  double guide_dx = 0.008;
  auto* scan = app.add_subcommand("scan", "bracket an existence threshold");
  scan->add_option("--l", l)->required();
  scan->add_option("--n", n)->capture_default_str();
  scan->add_option("--v0-from", v0_from)->required();
  scan->add_option("--v0-to", v0_to)->required();
  scan->add_option("--step", step)->capture_default_str();
  scan->add_option("--guide-dx", guide_dx, "coarse step for the first pass (0: none)")
      ->capture_default_str();
  add_common(scan, c);

  std::string v0_list = "2.1,3.5,4.8,5.2,6.7,8.1,8.3";
  std::string sectors = "l0:3,l1:2,l2:2";
  int jobs = 1;
  auto* table = app.add_subcommand("table", "eigenvalue table over several wells");
  table->add_option("--v0-list", v0_list)->capture_default_str();
  table->add_option("--sectors", sectors)->capture_default_str();
  table->add_option("--jobs", jobs, "sectors solved concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(table, c);

  int theta_samples = 360;
  double r_max = 3.0;
  std::size_t r_stride = 10;
  std::string output;
  auto* density = app.add_subcommand("density", "|psi|^2 on an (r, theta) lattice");
  density->add_option("--v0", v0)->required();
  density->add_option("--l", l)->required();
  density->add_option("--m", m)->capture_default_str();
  density->add_option("--n", n)->capture_default_str();
  density->add_option("--theta-samples", theta_samples)->capture_default_str();
  density->add_option("--r-max", r_max, "0 keeps the whole grid")->capture_default_str();
  density->add_option("--r-stride", r_stride)->capture_default_str();
  density->add_option("--output", output, "file instead of stdout");
  add_common(density, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SolverParams params = c.params();
    if (solve->parsed()) {
      const Sector sector = sector_for(l, c.route);
      const RadialGrid grid = make_grid(grid_kind_for(sector), c.a, c.dx);
      auto states = solve_sector(v0, sector, n, grid, params, c.cascade());
      const EigenResult& r = states.back();
      const Verdict verdict = classify(r);
      RunRecord rec = make_run_record(r, params, c.coarsest_dx, verdict);
      if (c.timing) rec.duration_s = seconds_since(t0);
      if (!dump_path.empty()) dump_eigenfunction(dump_path, r);
      emit(out, c, {to_json(rec)});
      if (verdict == Verdict::undetermined) return kFailure;
      return verdict == Verdict::exists ? kOk : kAbsent;
    }
    if (scan->parsed()) {
      const Sector sector = sector_for(l, c.route);
      const RadialGrid grid = make_grid(grid_kind_for(sector), c.a, c.dx);
      ScanOptions opts;
      opts.guide_dx = guide_dx;
      opts.coarsest_dx = c.coarsest_dx;
      const auto report = scan_threshold(sector, n, v0_from, v0_to, step, grid,
                                         params, opts);
      Json j = to_json(report, v0_from, v0_to, c.a, c.dx);
      if (c.timing) j["duration_s"] = seconds_since(t0);
      emit(out, c, {j});
      return report.found ? kOk : kAbsent;
    }
    if (table->parsed()) {
      const auto v0s = parse_list(v0_list);
      const auto groups = parse_sectors(sectors, c.route);
      for (double v : v0s) WellPotential{v};  // reject v0 <= 0 up front
      std::vector<std::vector<TableCell>> parts(groups.size());
      auto work = [&](std::size_t g) {
        parts[g] = spectrum_table(v0s, {groups[g]}, c.a, c.dx, params, c.cascade());
      };
      if (jobs <= 1) {
        for (std::size_t g = 0; g < groups.size(); ++g) work(g);
      } else {
        std::size_t next = 0;
        while (next < groups.size()) {
          std::vector<std::future<void>> batch;
          for (int k = 0; k < jobs && next < groups.size(); ++k, ++next) {
            batch.push_back(std::async(std::launch::async, work, next));
          }
          for (auto& f : batch) f.get();
        }
      }
      std::vector<Json> rows;
      bool failed = false;
      for (const auto& part : parts) {
        for (const auto& cell : part) {
          failed = failed || !cell.error.empty() ||
                   cell.verdict == Verdict::undetermined;
          Json j = to_json(cell, c.a, c.dx);
          rows.push_back(j);
        }
      }
      if (c.timing) {
        for (auto& j : rows) j["duration_s"] = seconds_since(t0);
      }
      emit(out, c, rows);
      return failed ? kFailure : kOk;
    }
    if (density->parsed()) {
      if (l < 0 || l > 2 || std::abs(m) > l) {
        throw UsageError("need 0 <= l <= 2 and |m| <= l");
      }
      const Sector sector = sector_for(l, c.route);
      const RadialGrid grid = make_grid(grid_kind_for(sector), c.a, c.dx);
      auto states = solve_sector(v0, sector, n, grid, params, c.cascade());
      const EigenResult& r = states.back();
      DensityOptions opts;
      opts.theta_samples = theta_samples;
      opts.r_max = r_max;
      opts.r_stride = r_stride;
      const auto samples = density_profile(r, l, m, opts);
      std::ofstream file;
      if (!output.empty()) {
        file.open(output);
        if (!file) throw UsageError("cannot write " + output);
      }
      std::ostream& dest = output.empty() ? out : file;
      dest << "# sector=" << to_string(sector) << " l=" << l << " m=" << m
           << " n=" << n << " v0=" << v0 << " verdict=" << to_string(classify(r))
           << '\n';
      dest << "r,theta,density\n";
      char line[96];
      for (const auto& s : samples) {
        if (c.full_precision) {
          std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.r, s.theta, s.value);
        } else {
          std::snprintf(line, sizeof line, "%.6g,%.6g,%.6g\n", s.r, s.theta, s.value);
        }
        dest << line;
      }
      const Verdict v = classify(r);
      if (v == Verdict::undetermined) return kFailure;
      return v == Verdict::exists ? kOk : kAbsent;
    }
  } catch (const UsageError& e) {
    err << "uwell: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "uwell: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "uwell: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace uwell::cli
