#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace uwell {

/// Radius of the spherical well; lengths are measured in this unit.
inline constexpr double kWellRadius = 1.0;

/// Upper bound on the node count accepted by make_grid.
inline constexpr std::size_t kMaxGridNodes = std::size_t{1} << 24;

enum class GridKind {
  symmetric,  ///< cells tile [-a, a]
  radial,     ///< cells tile [0, a]
};

std::string_view to_string(GridKind kind);

/// Uniform midpoint-cell partition.
///
/// Node j sits at the centre of cell j: x_j = -a + (j + 1/2) dx on a
/// symmetric grid and r_j = (j + 1/2) dx on a radial grid. Neither kind has
/// a node at the origin. Node coordinates are computed as half-integer
/// multiples of dx so that mirrored nodes of a symmetric grid are exact
/// negatives of each other.
///
/// The grid is a small immutable value; nodes are generated on demand.
class RadialGrid {
 public:
  GridKind kind() const noexcept { return kind_; }
  double cutoff() const noexcept { return cutoff_; }
  double step() const noexcept { return step_; }

  /// Number of cells in [0, a], i.e. a / dx.
  std::size_t half_count() const noexcept { return half_count_; }
  std::size_t size() const noexcept {
    return kind_ == GridKind::symmetric ? 2 * half_count_ : half_count_;
  }

  double node(std::size_t j) const noexcept {
    const double offset = kind_ == GridKind::symmetric
                              ? static_cast<double>(half_count_)
                              : 0.0;
    return (static_cast<double>(j) - offset + 0.5) * step_;
  }
  std::vector<double> nodes() const;

  /// Index of the node at -x_j. Only meaningful for symmetric grids.
  std::size_t mirror(std::size_t j) const noexcept { return size() - 1 - j; }

  /// True when a / (factor * dx) is a whole number of cells.
  bool can_coarsen(std::size_t factor) const noexcept;
  /// The same interval with a step `factor` times larger.
  RadialGrid coarsened(std::size_t factor) const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  friend RadialGrid make_grid(GridKind, double, double);
  RadialGrid(GridKind kind, double cutoff, double step, std::size_t half)
      : kind_(kind), cutoff_(cutoff), step_(step), half_count_(half) {}

  GridKind kind_;
  double cutoff_;
  double step_;
  std::size_t half_count_;
};

/// Builds a grid over [-a, a] or [0, a] with spacing dx.
///
/// Rejects non-positive steps, cutoffs inside the well (a < 1), cutoffs
/// that are not an integer multiple of dx, and node counts beyond
/// kMaxGridNodes.
RadialGrid make_grid(GridKind kind, double cutoff_a, double step_dx);

/// Step potential: 0 for r < 1 and v0 for r >= 1.
class WellPotential {
 public:
  explicit WellPotential(double v0);

  double v0() const noexcept { return v0_; }
  double well_radius() const noexcept { return kWellRadius; }
  double operator()(double r) const noexcept {
    return r < kWellRadius ? 0.0 : v0_;
  }

 private:
  double v0_;
};

}  // namespace uwell
