#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwell/evolution.hpp"

namespace uwell {

enum class Verdict { exists, absent, undetermined };
std::string_view to_string(Verdict verdict);

/// exists iff the run converged and E_inf < v0 (strict). An escaped run is
/// absent; a run stopped by max_iters is undetermined.
Verdict classify(const EigenResult& result);

struct Existence {
  Verdict verdict;
  EigenResult result;
};

/// Solves states 1..n of the sector and judges the n-th.
Existence exists_bound_state(double v0, Sector sector, int n,
                             const RadialGrid& grid, const SolverParams& params,
                             const CascadeOptions& cascade = {});

struct ThresholdReport {
  Sector sector = Sector::oned_odd;
  int n = 1;
  bool found = false;
  double v0_lower = 0.0;  ///< no state
  double v0_upper = 0.0;  ///< state exists
  double resolution = 0.1;
  std::optional<EigenResult> lower_result;
  std::optional<EigenResult> upper_result;
};

struct ScanOptions {
  /// Step of the grid used to locate a candidate bracket before it is
  /// confirmed on the requested grid; 0 scans the requested grid directly.
  double guide_dx = 0.008;
  bool warm_start = true;
  double coarsest_dx = 0.016;
};

/// First pair (v0 - resolution, v0) on the lattice v0_start + k * resolution
/// with no state below and a state above. Throws Error when a verdict inside
/// the bracket is undetermined.
ThresholdReport scan_threshold(Sector sector, int n, double v0_start,
                               double v0_stop, double resolution,
                               const RadialGrid& grid, const SolverParams& params,
                               const ScanOptions& options = {});

/// Ratio of the probability outside the unit ball to the one inside.
/// One-dimensional odd states are read as g(r) = r f(r) on r > 0.
double probability_ratio(const EigenResult& result);

struct DensitySample {
  double r;
  double theta;
  double value;  ///< |psi|^2
};

struct DensityOptions {
  int theta_samples = 360;  ///< theta_k = k pi / (samples - 1)
  double r_max = 0.0;       ///< 0 keeps every node up to the cutoff
  std::size_t r_stride = 1;
};

/// |Y_l^m(theta)|^2, phi dropped.
double angular_density(int l, int m, double theta);

/// R(r) with psi = R(r) Y_l^m and unit norm in the full space.
std::vector<std::pair<double, double>> radial_part(const EigenResult& result);

/// |R(r)|^2 |Y_l^m(theta)|^2 on the (r, theta) lattice.
std::vector<DensitySample> density_profile(const EigenResult& result, int l,
                                           int m, const DensityOptions& options = {});

/// Number of bound states of the nonrelativistic well of depth v0:
/// count of n >= 1 with (2n - 1) pi / 2 < sqrt(v0).
int nonrel_bound_count(double v0);

/// n pi / 2 - pi / 8.
double infinite_well_asymptote(int n);

/// Literature infinite spherical well eigenvalues E_(n,l), l <= 2, n <= 3.
std::optional<double> infinite_well_reference(int l, int n);

struct SectorCount {
  Sector sector;
  int count;
};

struct TableCell {
  double v0 = 0.0;
  Sector sector = Sector::oned_odd;
  int n = 1;
  Verdict verdict = Verdict::undetermined;
  std::optional<EigenResult> result;
  std::string error;  ///< non-empty when the solve threw
};

/// One cell per (v0, sector, n) on grids of cutoff a and step dx. Failures
/// are recorded in the cell rather than thrown. Successive v0 values of a
/// sector are warm-started from the previous column.
std::vector<TableCell> spectrum_table(const std::vector<double>& v0_list,
                                      const std::vector<SectorCount>& sectors,
                                      double cutoff_a, double step_dx,
                                      const SolverParams& params,
                                      const CascadeOptions& cascade = {});

}  // namespace uwell
