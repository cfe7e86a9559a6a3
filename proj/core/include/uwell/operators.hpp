#pragma once

#include <vector>

#include "uwell/grid.hpp"
#include "uwell/sector.hpp"

namespace uwell {

// Reference O(N^2) nodal sums of the principal-value operators. The node
// r = p (or u = x) is skipped; samples outside the grid are taken as zero.
// Each function throws NumericalInstability if any output is non-finite.

/// One-dimensional operator on a symmetric grid, truncated to the window
/// |u - x| <= a: (Af)(x) = (1/pi) sum_{0<|u-x|<=a} (f(x) - f(u)) / (u-x)^2 dx.
std::vector<double> apply_cauchy_1d(const SectorState& state);

/// Purely radial l = 0 operator on [0, a].
std::vector<double> apply_radial_l0_direct(const SectorState& state);

/// Reduced l = 1 operator acting on f where psi = x_3 f(p).
std::vector<double> apply_radial_l1(const SectorState& state);

/// Reduced l = 2 operator acting on f where psi = (3 x_3^2 - p^2) f(p).
std::vector<double> apply_radial_l2(const SectorState& state);

/// Dispatches on the sector of the state.
std::vector<double> apply_kernel_direct(const SectorState& state);

/// Samples multiplied by V(|x_j|).
std::vector<double> apply_potential(const SectorState& state,
                                    const WellPotential& potential);

/// V(|x_j|) on every node.
std::vector<double> potential_diagonal(const RadialGrid& grid,
                                       const WellPotential& potential);

}  // namespace uwell
