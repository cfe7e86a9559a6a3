#include "uwell/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "uwell/error.hpp"
#include "uwell/kernels.hpp"

namespace uwell {
namespace {

void require_sector(const SectorState& s, Sector a, Sector b, const char* op) {
  if (s.sector() != a && s.sector() != b) {
    throw InvalidArgument(std::string(op) + " called on sector " +
                          std::string(to_string(s.sector())));
  }
}

void check_finite(const std::vector<double>& out, const char* op) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (!std::isfinite(out[j])) {
      throw NumericalInstability(std::string(op) +
                                 ": non-finite output at node " +
                                 std::to_string(j));
    }
  }
}

std::vector<double> apply_radial(const SectorState& state, int l) {
  const RadialGrid& grid = state.grid();
  const std::size_t n = grid.size();
  const double dx = grid.step();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = grid.node(i);
    const double fp = state[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = grid.node(j);
      const double w0 = kernels::radial_weight(0, r, p);
      const double wl = l == 0 ? w0 : kernels::radial_weight(l, r, p);
      acc += fp * w0 - state[j] * wl;
    }
    out[i] = acc * dx;
  }
  return out;
}

}  // namespace

std::vector<double> apply_cauchy_1d(const SectorState& state) {
  require_sector(state, Sector::oned_even, Sector::oned_odd, "apply_cauchy_1d");
  const RadialGrid& grid = state.grid();
  const auto n = static_cast<long>(grid.size());
  const auto window = static_cast<long>(grid.half_count());
  const double dx = grid.step();
  std::vector<double> out(grid.size(), 0.0);
  for (long i = 0; i < n; ++i) {
    const double fx = state[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (long k = -window; k <= window; ++k) {
      if (k == 0) continue;
      const long j = i + k;
      const double fu = (j >= 0 && j < n) ? state[static_cast<std::size_t>(j)] : 0.0;
      acc += (fx - fu) * kernels::line_weight(static_cast<double>(k) * dx);
    }
    out[static_cast<std::size_t>(i)] = acc * dx;
  }
  check_finite(out, "apply_cauchy_1d");
  return out;
}

std::vector<double> apply_radial_l0_direct(const SectorState& state) {
  require_sector(state, Sector::l0_direct, Sector::l0_direct,
                 "apply_radial_l0_direct");
  auto out = apply_radial(state, 0);
  check_finite(out, "apply_radial_l0_direct");
  return out;
}

std::vector<double> apply_radial_l1(const SectorState& state) {
  require_sector(state, Sector::l1, Sector::l1, "apply_radial_l1");
  auto out = apply_radial(state, 1);
  check_finite(out, "apply_radial_l1");
  return out;
}

std::vector<double> apply_radial_l2(const SectorState& state) {
  require_sector(state, Sector::l2, Sector::l2, "apply_radial_l2");
  auto out = apply_radial(state, 2);
  check_finite(out, "apply_radial_l2");
  return out;
}

std::vector<double> apply_kernel_direct(const SectorState& state) {
  switch (state.sector()) {
    case Sector::oned_even:
    case Sector::oned_odd: return apply_cauchy_1d(state);
    case Sector::l0_direct: return apply_radial_l0_direct(state);
    case Sector::l1: return apply_radial_l1(state);
    case Sector::l2: return apply_radial_l2(state);
  }
  throw InvalidArgument("unknown sector");
}

std::vector<double> potential_diagonal(const RadialGrid& grid,
                                       const WellPotential& potential) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = potential(std::abs(grid.node(j)));
  return v;
}

std::vector<double> apply_potential(const SectorState& state,
                                    const WellPotential& potential) {
  std::vector<double> out(state.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = potential(std::abs(state.grid().node(j))) * state[j];
  }
  return out;
}

}  // namespace uwell
