#include "uwell/spectrum.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "uwell/error.hpp"
#include "uwell/renorm.hpp"

namespace uwell {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<SectorState> seeds_from(const std::vector<EigenResult>& results) {
  std::vector<SectorState> seeds;
  for (const auto& r : results) seeds.push_back(r.eigenfunction);
  return seeds;
}

// Grid of the same kind and cutoff with step `dx`, if a/dx is whole.
std::optional<RadialGrid> regrid(const RadialGrid& grid, double dx) {
  try {
    return make_grid(grid.kind(), grid.cutoff(), dx);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::exists: return "exists";
    case Verdict::absent: return "absent";
    case Verdict::undetermined: return "undetermined";
  }
  return "unknown";
}

Verdict classify(const EigenResult& result) {
  switch (result.status) {
    case SolveStatus::escaped: return Verdict::absent;
    case SolveStatus::max_iterations: return Verdict::undetermined;
    case SolveStatus::converged: break;
  }
  return result.eigenvalue_renormalized < result.v0 ? Verdict::exists
                                                    : Verdict::absent;
}

Existence exists_bound_state(double v0, Sector sector, int n,
                             const RadialGrid& grid, const SolverParams& params,
                             const CascadeOptions& cascade) {
  auto states = solve_sector(v0, sector, n, grid, params, cascade);
  EigenResult r = std::move(states.back());
  const Verdict v = classify(r);
  return {v, std::move(r)};
}

ThresholdReport scan_threshold(Sector sector, int n, double v0_start,
                               double v0_stop, double resolution,
                               const RadialGrid& grid, const SolverParams& params,
                               const ScanOptions& options) {
  if (!(resolution > 0.0)) throw InvalidArgument("resolution must be > 0");
  if (!(v0_start < v0_stop)) throw InvalidArgument("need v0_start < v0_stop");
  if (!(v0_start > 0.0)) throw InvalidArgument("v0_start must be > 0");
  const long last = std::lround(std::floor((v0_stop - v0_start) / resolution + 1e-9));
  auto v0_at = [&](long k) { return v0_start + static_cast<double>(k) * resolution; };

  struct Lane {
    RadialGrid grid;
    std::map<long, Existence> seen;
    std::vector<SectorState> warm;
  };
  auto evaluate = [&](Lane& lane, long k) -> const Existence& {
    if (auto it = lane.seen.find(k); it != lane.seen.end()) return it->second;
    CascadeOptions c;
    c.coarsest_dx = options.coarsest_dx;
    if (options.warm_start) c.seeds = lane.warm;
    auto states = solve_sector(v0_at(k), sector, n, lane.grid, params, c);
    lane.warm = seeds_from(states);
    EigenResult r = std::move(states.back());
    const Verdict v = classify(r);
    return lane.seen.emplace(k, Existence{v, std::move(r)}).first->second;
  };

  Lane fine{grid, {}, {}};
  // candidate: smallest k where a state exists, last + 1 if none
  long candidate = 0;
  std::optional<RadialGrid> guide_grid;
  if (options.guide_dx > grid.step()) guide_grid = regrid(grid, options.guide_dx);
  if (guide_grid) {
    Lane guide{*guide_grid, {}, {}};
    auto present = [&](long k) { return evaluate(guide, k).verdict == Verdict::exists; };
    if (present(0)) {
      candidate = 0;
    } else if (!present(last)) {
      candidate = last + 1;
    } else {
      long lo = 0, hi = last;
      while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (present(mid) ? hi : lo) = mid;
      }
      candidate = hi;
    }
  }

  auto confirmed = [&](long k) {
    const Existence& e = evaluate(fine, k);
    if (e.verdict == Verdict::undetermined) {
      throw Error("undetermined verdict at v0 = " + std::to_string(v0_at(k)) +
                  "; increase max_iters or loosen eig_tol");
    }
    return e.verdict == Verdict::exists;
  };

  ThresholdReport report;
  report.sector = sector;
  report.n = n;
  report.resolution = resolution;
  long k = std::min(candidate, last);
  if (candidate > last && !confirmed(last)) return report;
  while (k >= 0 && k <= last) {
    if (confirmed(k)) {
      if (k == 0) return report;  // present already at the start of the range
      if (!confirmed(k - 1)) {
        report.found = true;
        report.v0_lower = v0_at(k - 1);
        report.v0_upper = v0_at(k);
        report.lower_result = fine.seen.at(k - 1).result;
        report.upper_result = fine.seen.at(k).result;
        return report;
      }
      --k;
    } else {
      ++k;
    }
  }
  return report;
}

double probability_ratio(const EigenResult& result) {
  const SectorState& f = result.eigenfunction;
  const RadialGrid& grid = f.grid();
  if (f.sector() == Sector::oned_even) {
    throw InvalidArgument("even one-dimensional states have no radial reading");
  }
  const double norm = sector_norm(f);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw InvalidArgument("probability_ratio needs a normalized state");
  }
  const auto w = quadrature_weights(grid, f.sector());
  double inside = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid.node(j);
    if (x <= 0.0) continue;
    // for the odd route w = 1 and g^2 plays the role of r^2 f^2
    const double mass = w[j] * f[j] * f[j];
    total += mass;
    if (x < kWellRadius) inside += mass;
  }
  if (!(inside > 0.0)) throw InvalidArgument("state has no weight inside the well");
  return (total - inside) / inside;
}

double angular_density(int l, int m, double theta) {
  if (l < 0 || l > 2 || std::abs(m) > l) {
    throw InvalidArgument("invalid (l, m) = (" + std::to_string(l) + ", " +
                          std::to_string(m) + ")");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int am = std::abs(m);
  if (l == 0) return 1.0 / (4.0 * kPi);
  if (l == 1) {
    return am == 0 ? 3.0 / (4.0 * kPi) * c * c : 3.0 / (8.0 * kPi) * s * s;
  }
  switch (am) {
    case 0: {
      const double q = 3.0 * c * c - 1.0;
      return 5.0 / (16.0 * kPi) * q * q;
    }
    case 1: return 15.0 / (8.0 * kPi) * s * s * c * c;
    default: return 15.0 / (32.0 * kPi) * s * s * s * s;
  }
}

std::vector<std::pair<double, double>> radial_part(const EigenResult& result) {
  const SectorState& f = result.eigenfunction;
  const RadialGrid& grid = f.grid();
  std::vector<std::pair<double, double>> out;
  if (f.sector() == Sector::oned_even) {
    throw InvalidArgument("even one-dimensional states have no radial reading");
  }
  if (f.sector() == Sector::oned_odd) {
    double half_norm = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (grid.node(j) > 0.0) half_norm += f[j] * f[j] * grid.step();
    }
    const double scale = 1.0 / std::sqrt(half_norm);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double r = grid.node(j);
      if (r > 0.0) out.emplace_back(r, scale * f[j] / r);
    }
    return out;
  }
  const int l = orbital_index(f.sector());
  const double pre = std::sqrt(weight_prefactor(f.sector()));
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = grid.node(j);
    out.emplace_back(r, pre * std::pow(r, l) * f[j]);
  }
  return out;
}

std::vector<DensitySample> density_profile(const EigenResult& result, int l,
                                           int m, const DensityOptions& options) {
  angular_density(l, m, 0.0);  // validates (l, m)
  if (l != orbital_index(result.sector)) {
    throw InvalidArgument("l = " + std::to_string(l) + " does not match sector " +
                          std::string(to_string(result.sector)));
  }
  if (options.theta_samples < 2) throw InvalidArgument("need at least 2 theta samples");
  if (options.r_stride < 1) throw InvalidArgument("r_stride must be >= 1");
  const auto radial = radial_part(result);
  std::vector<double> angular(static_cast<std::size_t>(options.theta_samples));
  const double dtheta = kPi / (options.theta_samples - 1);
  for (std::size_t k = 0; k < angular.size(); ++k) {
    angular[k] = angular_density(l, m, static_cast<double>(k) * dtheta);
  }
  std::vector<DensitySample> out;
  for (std::size_t j = 0; j < radial.size(); j += options.r_stride) {
    const auto [r, value] = radial[j];
    if (options.r_max > 0.0 && r > options.r_max) break;
    for (std::size_t k = 0; k < angular.size(); ++k) {
      out.push_back({r, static_cast<double>(k) * dtheta, value * value * angular[k]});
    }
  }
  return out;
}

int nonrel_bound_count(double v0) {
  if (!(v0 > 0.0)) throw InvalidArgument("v0 must be > 0");
  const double q = std::sqrt(v0) / (kPi / 2.0);  // compare with 2n - 1
  const double nearest = std::round(q);
  if (std::fmod(nearest, 2.0) == 1.0 && std::abs(q - nearest) <= 1e-12 * q) {
    throw InvalidArgument("degenerate threshold: v0 = (2k+1)^2 pi^2 / 4");
  }
  return static_cast<int>(std::ceil((q + 1.0) / 2.0)) - 1;
}

double infinite_well_asymptote(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  return n * kPi / 2.0 - kPi / 8.0;
}

std::optional<double> infinite_well_reference(int l, int n) {
  // literature values for the infinite spherical well of unit radius
  static const std::map<std::pair<int, int>, double> table = {
      {{0, 1}, 2.754769}, {{0, 2}, 5.892214}, {{0, 3}, 9.033009},
      {{1, 1}, 4.121332}, {{1, 2}, 7.342181},
      {{2, 1}, 5.400079}, {{2, 2}, 8.718436},
  };
  if (auto it = table.find({l, n}); it != table.end()) return it->second;
  return std::nullopt;
}

std::vector<TableCell> spectrum_table(const std::vector<double>& v0_list,
                                      const std::vector<SectorCount>& sectors,
                                      double cutoff_a, double step_dx,
                                      const SolverParams& params,
                                      const CascadeOptions& cascade) {
  std::vector<TableCell> cells;
  for (const auto& sc : sectors) {
    const RadialGrid grid = make_grid(grid_kind_for(sc.sector), cutoff_a, step_dx);
    std::vector<SectorState> warm = cascade.seeds;
    for (double v0 : v0_list) {
      std::vector<TableCell> column;
      for (int k = 1; k <= sc.count; ++k) {
        TableCell cell;
        cell.v0 = v0;
        cell.sector = sc.sector;
        cell.n = k;
        column.push_back(std::move(cell));
      }
      try {
        CascadeOptions c = cascade;
        c.seeds = warm;
        auto states = solve_sector(v0, sc.sector, sc.count, grid, params, c);
        warm = seeds_from(states);
        for (std::size_t k = 0; k < states.size(); ++k) {
          column[k].verdict = classify(states[k]);
          column[k].result = std::move(states[k]);
        }
      } catch (const Error& e) {
        for (auto& cell : column) cell.error = e.what();
      }
      for (auto& cell : column) cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace uwell
