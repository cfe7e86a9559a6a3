#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uwell/grid.hpp"

namespace uwell {

/// Orbital sector together with the route used to reach it.
///
/// The two one-dimensional sectors live on a symmetric grid and carry the
/// even or odd parity class; the radial ones act on f(r) with
/// psi = f(r) * r^l * Y_l^m on a radial grid.
enum class Sector {
  oned_even,
  oned_odd,
  l0_direct,
  l1,
  l2,
};

std::string_view to_string(Sector sector);
std::optional<Sector> parse_sector(std::string_view name);

bool is_one_dimensional(Sector sector) noexcept;
GridKind grid_kind_for(Sector sector) noexcept;

/// Orbital index l of the three-dimensional state (0 for both 1D routes).
int orbital_index(Sector sector) noexcept;

/// Exponent k of the r^k factor in the sector inner product.
int weight_exponent(Sector sector) noexcept;

/// Constant in front of the sector inner product: 1, 1, 4pi, 4pi/3, 16pi/5.
double weight_prefactor(Sector sector) noexcept;

/// Full sector weight w(x) = prefactor * |x|^k.
double sector_weight(Sector sector, double x) noexcept;

/// Sampled profile on a grid, tagged with its sector.
class SectorState {
 public:
  SectorState(RadialGrid grid, Sector sector);
  SectorState(RadialGrid grid, Sector sector, std::vector<double> samples);

  const RadialGrid& grid() const noexcept { return grid_; }
  Sector sector() const noexcept { return sector_; }
  int weight_exponent() const noexcept { return uwell::weight_exponent(sector_); }

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> samples() const noexcept { return samples_; }
  double& operator[](std::size_t j) noexcept { return samples_[j]; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }

 private:
  RadialGrid grid_;
  Sector sector_;
  std::vector<double> samples_;
};

/// Sum_j w(x_j) f1(x_j) f2(x_j) dx with the sector weight.
double sector_inner(const SectorState& a, const SectorState& b);
double sector_norm(const SectorState& s);

/// Scales the state to unit sector norm and returns the norm it had.
double normalize(SectorState& s);

/// Projects the state onto its parity class: (f(x) -+ f(-x)) / 2.
/// No-op for radial sectors.
void symmetrize_parity(SectorState& s);

/// Per-node weights w(x_j) * dx, cached for repeated inner products.
std::vector<double> quadrature_weights(const RadialGrid& grid, Sector sector);

}  // namespace uwell
