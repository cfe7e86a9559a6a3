#include "uwell/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uwell/error.hpp"
#include "uwell/renorm.hpp"

namespace uwell {
namespace {

constexpr double kPi = std::numbers::pi;

void enforce_parity(std::span<double> f, Sector sector, const RadialGrid& grid) {
  const double sign = sector == Sector::oned_odd ? -1.0 : 1.0;
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const std::size_t k = grid.mirror(j);
    const double v = 0.5 * (f[j] + sign * f[k]);
    f[j] = v;
    f[k] = sign * v;
  }
}

void check_basis(std::span<const SectorState> basis, const RadialGrid& grid,
                 Sector sector) {
  for (const auto& b : basis) {
    if (!(b.grid() == grid) || b.sector() != sector) {
      throw InvalidArgument("deflation state on a different grid or sector");
    }
  }
}

}  // namespace

double effective_step(const SolverParams& params, const RadialGrid& grid) {
  return params.h > 0.0 ? params.h : grid.step() / 4.0;
}

void validate(const SolverParams& params, const RadialGrid& grid, double v0) {
  const double h = effective_step(params, grid);
  const double lambda_max = kPi / grid.step() + v0;
  if (params.h < 0.0 || !(h < 2.0 / lambda_max)) {
    throw InvalidArgument("evolution step h = " + std::to_string(h) +
                          " outside the stable range (0, " +
                          std::to_string(2.0 / lambda_max) + ")");
  }
  if (!(params.eig_tol > 0.0)) throw InvalidArgument("eig_tol must be > 0");
  if (params.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (params.ortho_every < 1) throw InvalidArgument("ortho_every must be >= 1");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::escaped: return "escaped";
    case SolveStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

StrangPropagator::StrangPropagator(const RadialGrid& grid, Sector sector,
                                   const WellPotential& potential, double h)
    : op_(grid, sector),
      h_(h),
      potential_(grid.size()),
      half_factor_(grid.size()),
      weights_(quadrature_weights(grid, sector)),
      scratch_(grid.size()) {
  if (!(h >= 0.0)) throw InvalidArgument("evolution step must be >= 0");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    potential_[j] = potential(std::abs(grid.node(j)));
    half_factor_[j] = std::exp(-0.5 * h * potential_[j]);
  }
}

void StrangPropagator::apply(std::span<const double> in, std::span<double> out) {
  const std::size_t n = scratch_.size();
  for (std::size_t j = 0; j < n; ++j) scratch_[j] = half_factor_[j] * in[j];
  op_.apply(scratch_, out);
  double check = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = half_factor_[j] * (scratch_[j] - h_ * out[j]);
    check += std::abs(out[j]);
  }
  if (!std::isfinite(check)) {
    throw NumericalInstability("strang_step produced non-finite samples; "
                               "try a smaller h");
  }
}

void StrangPropagator::apply_hamiltonian(std::span<const double> in,
                                         std::span<double> out) {
  op_.apply(in, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += potential_[j] * in[j];
}

double StrangPropagator::inner(std::span<const double> a,
                               std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += weights_[j] * a[j] * b[j];
  return s;
}

SectorState strang_step(const SectorState& state, const WellPotential& potential,
                        const SolverParams& params) {
  StrangPropagator prop(state.grid(), state.sector(), potential,
                        params.h > 0.0 ? params.h
                                       : effective_step(params, state.grid()));
  SectorState out(state.grid(), state.sector());
  prop.apply(state.samples(), out.samples());
  return out;
}

double estimate_eigenvalue(double overlap, double h) {
  if (!(overlap > 0.0)) {
    throw NumericalInstability("overlap <phi|S phi> = " + std::to_string(overlap) +
                               " is not positive");
  }
  if (!(h > 0.0)) throw InvalidArgument("estimate_eigenvalue needs h > 0");
  return -std::log(overlap) / h;
}

double estimate_eigenvalue(const SectorState& before, const SectorState& after,
                           const SolverParams& params) {
  return estimate_eigenvalue(sector_inner(before, after),
                             effective_step(params, before.grid()));
}

SectorState initial_state(const RadialGrid& grid, Sector sector, int n) {
  if (n < 1) throw InvalidArgument("state index n must be >= 1");
  const double nn = n;
  auto profile = [&](double x) {
    switch (sector) {
      case Sector::oned_even: return std::cos((nn - 1.0) * kPi * x);
      case Sector::oned_odd: return std::sin((2.0 * nn - 1.0) * kPi * x / 2.0);
      default: {
        const double k = (2.0 * nn - 1.0) * kPi / 2.0;
        return x > 0.0 ? std::sin(k * x) / x : k;
      }
    }
  };
  SectorState s(grid, sector);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const double ax = std::abs(x);
    if (ax < kWellRadius) {
      s[j] = profile(x);
    } else {
      const double edge = profile(x < 0 ? -kWellRadius : kWellRadius);
      s[j] = edge * std::exp(-(ax - kWellRadius));
    }
  }
  return s;
}

SectorState resample(const SectorState& state, const RadialGrid& target) {
  const RadialGrid& src = state.grid();
  if (src.kind() != target.kind()) {
    throw InvalidArgument("resample: grid kinds differ");
  }
  SectorState out(target, state.sector());
  const std::size_t n = src.size();
  const double x0 = src.node(0);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double x = target.node(j);
    if (std::abs(x) > src.cutoff()) continue;
    if (n == 1) {
      out[j] = state[0];
      continue;
    }
    const double u = (x - x0) / src.step();
    const auto k = static_cast<std::size_t>(
        std::clamp(std::floor(u), 0.0, static_cast<double>(n - 2)));
    const double t = std::clamp(u - static_cast<double>(k), 0.0, 1.0);
    out[j] = (1.0 - t) * state[k] + t * state[k + 1];
  }
  return out;
}

EigenResult solve_state(double v0, Sector sector, int n, const RadialGrid& grid,
                        const SolverParams& params,
                        std::span<const SectorState> deflation,
                        const std::optional<SectorState>& seed) {
  const WellPotential potential(v0);
  validate(params, grid, v0);
  if (n < 1) throw InvalidArgument("state index n must be >= 1");
  check_basis(deflation, grid, sector);
  const double h = effective_step(params, grid);
  const bool parity = params.symmetrize_parity && is_one_dimensional(sector);

  StrangPropagator prop(grid, sector, potential, h);
  SectorState f = seed ? resample(*seed, grid) : initial_state(grid, sector, n);
  if (seed && seed->sector() != sector) {
    throw InvalidArgument("seed belongs to another sector");
  }
  SectorState g(grid, sector);

  auto deflate = [&](std::span<double> v) {
    for (const auto& b : deflation) {
      const double c = prop.inner(b.samples(), v);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * b[j];
    }
  };
  auto renormalize_in_place = [&](std::span<double> v) {
    const double norm = std::sqrt(prop.inner(v, v));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalInstability("state norm is zero or non-finite");
    }
    for (double& x : v) x /= norm;
  };

  deflate(f.samples());
  if (parity) enforce_parity(f.samples(), sector, grid);
  renormalize_in_place(f.samples());

  EigenResult result(f);
  result.v0 = v0;
  result.sector = sector;
  result.n = n;
  result.cutoff_a = grid.cutoff();
  result.step_dx = grid.step();
  result.h = h;

  double estimate = 0.0;
  double previous = 0.0;
  int above = 0;
  long it = 0;
  SolveStatus status = SolveStatus::max_iterations;
  while (it < params.max_iters) {
    ++it;
    prop.apply(f.samples(), g.samples());
    estimate = estimate_eigenvalue(prop.inner(f.samples(), g.samples()), h);
    if (it % params.ortho_every == 0) deflate(g.samples());
    if (parity) enforce_parity(g.samples(), sector, grid);
    renormalize_in_place(g.samples());
    std::swap(f, g);

    if (static_cast<double>(it) * h >= params.escape_min_time &&
        estimate > v0 + params.escape_margin) {
      if (++above >= params.escape_window) {
        status = SolveStatus::escaped;
        break;
      }
    } else {
      above = 0;
    }
    if (it > 1 && std::abs(estimate - previous) < params.eig_tol) {
      status = SolveStatus::converged;
      break;
    }
    previous = estimate;
  }
  if (it % params.ortho_every != 0) {
    deflate(f.samples());
    renormalize_in_place(f.samples());
  }

  prop.apply_hamiltonian(f.samples(), g.samples());
  result.rayleigh_quotient = prop.inner(f.samples(), g.samples());
  for (std::size_t j = 0; j < f.size(); ++j) g[j] -= estimate * f[j];
  result.residual = std::sqrt(prop.inner(g.samples(), g.samples()));

  result.eigenvalue_at_a = estimate;
  result.eigenvalue_renormalized = renormalized_value(estimate, grid.cutoff(), sector);
  result.iterations = it;
  result.total_iterations = it;
  result.status = status;
  result.converged = status == SolveStatus::converged;
  result.eigenfunction = std::move(f);
  return result;
}

std::vector<EigenResult> solve_sector(double v0, Sector sector, int count,
                                      const RadialGrid& grid,
                                      const SolverParams& params,
                                      const CascadeOptions& cascade) {
  if (count < 1) throw InvalidArgument("state count must be >= 1");
  std::vector<RadialGrid> ladder{grid};
  if (cascade.coarsest_dx > 0.0) {
    while (ladder.back().step() * 2.0 <= cascade.coarsest_dx * (1.0 + 1e-9) &&
           ladder.back().can_coarsen(2)) {
      RadialGrid next = ladder.back().coarsened(2);
      // deep wells: a coarse level's step can leave the stable range
      const double h = params.h > 0.0 ? params.h * next.step() / grid.step()
                                      : next.step() / 4.0;
      if (!(h < 2.0 / (kPi / next.step() + v0))) break;
      ladder.push_back(std::move(next));
    }
  }
  std::reverse(ladder.begin(), ladder.end());

  std::vector<EigenResult> previous;
  int escaped_from = count + 1;  // lowest n seen escaping on any level
  for (std::size_t level = 0; level < ladder.size(); ++level) {
    const RadialGrid& g = ladder[level];
    SolverParams lp = params;
    if (params.h > 0.0) lp.h = params.h * g.step() / grid.step();

    std::vector<EigenResult> current;
    std::vector<SectorState> basis;
    for (int k = 1; k <= count; ++k) {
      const auto idx = static_cast<std::size_t>(k - 1);
      if (k > escaped_from || (k == escaped_from && level > 0)) {
        EigenResult r = k == escaped_from ? previous[idx] : current.back();
        r.n = k;
        r.status = SolveStatus::escaped;
        r.converged = false;
        current.push_back(std::move(r));
        continue;
      }
      std::optional<SectorState> seed;
      if (level > 0) {
        seed = previous[idx].eigenfunction;
      } else if (idx < cascade.seeds.size()) {
        seed = cascade.seeds[idx];
      }
      current.push_back(solve_state(v0, sector, k, g, lp, basis, seed));
      if (level > 0) {
        current.back().total_iterations += previous[idx].total_iterations;
      }
      if (current.back().status == SolveStatus::escaped) escaped_from = k;
      basis.push_back(current.back().eigenfunction);
    }
    previous = std::move(current);
    if (escaped_from == 1) break;
  }
  return previous;
}

}  // namespace uwell
