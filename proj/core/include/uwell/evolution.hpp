#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uwell/fast_operator.hpp"
#include "uwell/grid.hpp"
#include "uwell/sector.hpp"

namespace uwell {

struct SolverParams {
  double h = 0.0;  ///< evolution step; 0 selects dx / 4
  int max_iters = 200000;
  double eig_tol = 1e-8;
  int ortho_every = 1;
  bool symmetrize_parity = true;
  /// A run is declared escaped once the estimate stays above v0 + margin
  /// for `escape_window` consecutive steps, after `escape_min_time` of
  /// imaginary time has elapsed.
  double escape_margin = 0.5;
  int escape_window = 1000;
  double escape_min_time = 5.0;
};

/// h actually used on `grid` (resolves the dx / 4 default).
double effective_step(const SolverParams& params, const RadialGrid& grid);

/// Throws InvalidArgument unless h is inside the stable range
/// h < 2 / (pi / dx + v0) and the tolerances are positive.
void validate(const SolverParams& params, const RadialGrid& grid, double v0);

enum class SolveStatus { converged, escaped, max_iterations };
std::string_view to_string(SolveStatus status);

struct EigenResult {
  explicit EigenResult(SectorState f) : eigenfunction(std::move(f)) {}

  double v0 = 0.0;
  Sector sector = Sector::oned_odd;
  int n = 1;  ///< index within the sector, 1-based
  double eigenvalue_at_a = 0.0;
  double eigenvalue_renormalized = 0.0;
  double cutoff_a = 0.0;
  double step_dx = 0.0;
  double h = 0.0;
  long iterations = 0;        ///< on the final grid
  long total_iterations = 0;  ///< summed over cascade levels
  bool converged = false;
  SolveStatus status = SolveStatus::max_iterations;
  double rayleigh_quotient = 0.0;  ///< <f,(A+V)f> for the final state
  double residual = 0.0;           ///< weighted norm of (A+V)f - E f
  SectorState eigenfunction;
};

/// e^{-hV/2} (1 - hA) e^{-hV/2} on a fixed grid and sector.
class StrangPropagator {
 public:
  StrangPropagator(const RadialGrid& grid, Sector sector,
                   const WellPotential& potential, double h);

  const RadialGrid& grid() const noexcept { return op_.grid(); }
  Sector sector() const noexcept { return op_.sector(); }
  double step() const noexcept { return h_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// out = S(h) in. Throws NumericalInstability on non-finite output.
  void apply(std::span<const double> in, std::span<double> out);

  /// out = (A + V) in.
  void apply_hamiltonian(std::span<const double> in, std::span<double> out);

  double inner(std::span<const double> a, std::span<const double> b) const;

 private:
  KernelOperator op_;
  double h_;
  std::vector<double> potential_;
  std::vector<double> half_factor_;
  std::vector<double> weights_;
  std::vector<double> scratch_;
};

/// S(h) applied to `state`, not renormalized.
SectorState strang_step(const SectorState& state, const WellPotential& potential,
                        const SolverParams& params);

/// -ln<before|after> / h with the sector inner product.
double estimate_eigenvalue(const SectorState& before, const SectorState& after,
                           const SolverParams& params);
double estimate_eigenvalue(double overlap, double h);

/// Trigonometric starting profile for the n-th state of a sector.
SectorState initial_state(const RadialGrid& grid, Sector sector, int n);

/// Linear interpolation of a state onto another grid of the same kind;
/// zero outside the source interval.
SectorState resample(const SectorState& state, const RadialGrid& target);

/// Imaginary-time iteration for the n-th state of a sector on one grid.
/// `deflation` holds the n - 1 lower states (orthonormal, same grid).
EigenResult solve_state(double v0, Sector sector, int n, const RadialGrid& grid,
                        const SolverParams& params,
                        std::span<const SectorState> deflation,
                        const std::optional<SectorState>& seed = std::nullopt);

struct CascadeOptions {
  /// Coarsest step of the warm-up ladder; 0 disables the ladder.
  double coarsest_dx = 0.016;
  /// Optional starting states (any grid of the right kind), one per n.
  std::vector<SectorState> seeds;
};

/// States n = 1..count of one sector. The grid is coarsened by powers of two
/// up to `coarsest_dx`; each level is seeded with the interpolated states of
/// the level below. Once a state escapes, the higher ones are reported as
/// escaped without further iteration.
std::vector<EigenResult> solve_sector(double v0, Sector sector, int count,
                                      const RadialGrid& grid,
                                      const SolverParams& params,
                                      const CascadeOptions& cascade = {});

}  // namespace uwell
