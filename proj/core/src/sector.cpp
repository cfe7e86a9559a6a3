#include "uwell/sector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uwell/error.hpp"

namespace uwell {

std::string_view to_string(Sector sector) {
  switch (sector) {
    case Sector::oned_even: return "oned_even";
    case Sector::oned_odd: return "oned_odd";
    case Sector::l0_direct: return "l0_direct";
    case Sector::l1: return "l1";
    case Sector::l2: return "l2";
  }
  return "unknown";
}

std::optional<Sector> parse_sector(std::string_view name) {
  for (auto s : {Sector::oned_even, Sector::oned_odd, Sector::l0_direct,
                 Sector::l1, Sector::l2}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool is_one_dimensional(Sector sector) noexcept {
  return sector == Sector::oned_even || sector == Sector::oned_odd;
}

GridKind grid_kind_for(Sector sector) noexcept {
  return is_one_dimensional(sector) ? GridKind::symmetric : GridKind::radial;
}

int orbital_index(Sector sector) noexcept {
  switch (sector) {
    case Sector::l1: return 1;
    case Sector::l2: return 2;
    default: return 0;
  }
}

int weight_exponent(Sector sector) noexcept {
  switch (sector) {
    case Sector::l0_direct: return 2;
    case Sector::l1: return 4;
    case Sector::l2: return 6;
    default: return 0;
  }
}

double weight_prefactor(Sector sector) noexcept {
  constexpr double pi = std::numbers::pi;
  switch (sector) {
    case Sector::l0_direct: return 4.0 * pi;
    case Sector::l1: return 4.0 * pi / 3.0;
    case Sector::l2: return 16.0 * pi / 5.0;
    default: return 1.0;
  }
}

double sector_weight(Sector sector, double x) noexcept {
  const double ax = std::abs(x);
  double w = weight_prefactor(sector);
  for (int k = 0; k < weight_exponent(sector); ++k) w *= ax;
  return w;
}

SectorState::SectorState(RadialGrid grid, Sector sector)
    : SectorState(grid, sector, std::vector<double>(grid.size(), 0.0)) {}

SectorState::SectorState(RadialGrid grid, Sector sector,
                         std::vector<double> samples)
    : grid_(grid), sector_(sector), samples_(std::move(samples)) {
  if (grid_.kind() != grid_kind_for(sector_)) {
    throw InvalidArgument(std::string("sector ") +
                          std::string(to_string(sector_)) +
                          " requires a " +
                          std::string(to_string(grid_kind_for(sector_))) +
                          " grid");
  }
  if (samples_.size() != grid_.size()) {
    throw InvalidArgument("sample count does not match grid node count");
  }
}

std::vector<double> quadrature_weights(const RadialGrid& grid, Sector sector) {
  std::vector<double> w(grid.size());
  const double dx = grid.step();
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = sector_weight(sector, grid.node(j)) * dx;
  }
  return w;
}

double sector_inner(const SectorState& a, const SectorState& b) {
  if (a.sector() != b.sector()) {
    throw InvalidArgument("inner product across different sectors");
  }
  if (!(a.grid() == b.grid())) {
    throw InvalidArgument("inner product across different grids");
  }
  const double dx = a.grid().step();
  const Sector sector = a.sector();
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += sector_weight(sector, a.grid().node(j)) * a[j] * b[j];
  }
  return acc * dx;
}

double sector_norm(const SectorState& s) { return std::sqrt(sector_inner(s, s)); }

double normalize(SectorState& s) {
  const double norm = sector_norm(s);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NumericalInstability("cannot normalize a state with norm " +
                               std::to_string(norm));
  }
  for (double& v : s.samples()) v /= norm;
  return norm;
}

void symmetrize_parity(SectorState& s) {
  if (!is_one_dimensional(s.sector())) return;
  const double sign = s.sector() == Sector::oned_odd ? -1.0 : 1.0;
  const std::size_t n = s.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const std::size_t m = n - 1 - j;
    const double sym = 0.5 * (s[j] + sign * s[m]);
    s[j] = sym;
    s[m] = sign * sym;
  }
}

}  // namespace uwell
