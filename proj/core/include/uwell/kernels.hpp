#pragma once

#include <cstddef>
#include <vector>

#include "uwell/grid.hpp"

namespace uwell {

/// Pointwise weights of the discretized operators.
///
/// Every radial sector operator has the form
///
///     (A f)(p) = sum_{r != p} [ f(p) W_0(r, p) - f(r) W_l(r, p) ] dr
///
/// where the f(p) coefficient is the l = 0 weight for all three sectors
/// (the l = 1 and l = 2 brackets reduce to it). W_l is homogeneous of
/// degree -2 in (r, p).
namespace kernels {

/// Largest orbital index with a reduced kernel.
inline constexpr int kMaxOrbital = 2;

/// Number of terms kept in the small-ratio expansions.
inline constexpr int kSeriesTerms = 18;

/// Ratio min(r,p)/max(r,p) below which the expansion replaces the closed
/// form. The closed forms of W_1 and W_2 cancel like t^2 and t^4.
inline constexpr double kSeriesCrossover = 0.25;

/// k-th coefficient c_k of the expansion
///   W_l(r, p) = 1/(pi max^2) * sum_k c_k t^(2k) * (t^(2l+2) if r < p)
/// with t = min(r, p) / max(r, p).
double series_coefficient(int l, int k);

/// W_l(r, p) from the closed form (log terms as 2 ln(|r-p| / (r+p))).
double radial_weight_closed(int l, double r, double p);

/// W_l(r, p), switching to the expansion when t < kSeriesCrossover.
double radial_weight(int l, double r, double p);

/// Off-diagonal coefficient 1 / (pi z^2) of the one-dimensional kernel.
double line_weight(double z);

/// Diagonal of the one-dimensional operator on a symmetric grid:
/// (2 / (pi dx)) * sum_{k=1}^{a/dx} 1/k^2, identical on every node because
/// the window |u - x| <= a extends past the grid with f = 0 there.
double line_diagonal(const RadialGrid& grid);

/// Diagonal D_i = sum_{j != i} W_0(r_j, p_i) dx of the radial operators,
/// evaluated in O(N) from harmonic partial sums.
std::vector<double> radial_diagonal(const RadialGrid& grid);

}  // namespace kernels
}  // namespace uwell
