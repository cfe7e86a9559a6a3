#pragma once

#include <memory>
#include <span>
#include <vector>

#include "uwell/grid.hpp"
#include "uwell/sector.hpp"

namespace uwell {

/// O(N log N) apply of a sector operator.
///
/// The off-diagonal nodal sums are split into Toeplitz (index difference)
/// and Hankel (index sum) pieces evaluated with real FFTs. Radial rows near
/// the origin, where the grouped FFT terms cancel badly, are recomputed from
/// stored near-field weights plus a far-field moment expansion.
///
/// apply() writes into internal scratch buffers: use one instance per thread.
class KernelOperator {
 public:
  KernelOperator(const RadialGrid& grid, Sector sector);
  ~KernelOperator();
  KernelOperator(KernelOperator&&) noexcept;
  KernelOperator& operator=(KernelOperator&&) noexcept;
  KernelOperator(const KernelOperator&) = delete;
  KernelOperator& operator=(const KernelOperator&) = delete;

  const RadialGrid& grid() const noexcept;
  Sector sector() const noexcept;

  /// out = A f. The spans must have grid().size() entries and not alias.
  void apply(std::span<const double> f, std::span<double> out);
  std::vector<double> apply(std::span<const double> f);

  /// Radial rows below this index use the stable path (0 for 1D sectors).
  std::size_t stable_rows() const noexcept;

  /// Diagonal entries D_i of the operator.
  std::span<const double> diagonal() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Smallest length >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t fft_friendly_size(std::size_t n);

}  // namespace uwell
