#pragma once

#include <cstddef>
#include <vector>

#include "uwell/grid.hpp"
#include "uwell/sector.hpp"

namespace uwell {

/// Largest matrix dimension the dense path accepts (after the parity
/// reduction for one-dimensional sectors).
inline constexpr std::size_t kOracleMaxNodes = 2000;

/// Dense A + V in weighted coordinates y_i = sqrt(w_i dx) f_i.
///
/// Entries come straight from the nodal sums in long double. One-dimensional
/// sectors are reduced to the x > 0 half of the grid by their parity, so
/// `size` is half the node count there.
struct DenseOperator {
  Sector sector = Sector::oned_odd;
  RadialGrid grid;
  std::size_t size = 0;
  std::vector<double> matrix;        ///< row-major size x size, symmetrized
  std::vector<double> sqrt_weights;  ///< per reduced node
  std::vector<std::size_t> nodes;    ///< grid index of each reduced node
  double asymmetry = 0.0;            ///< ||M - M^T||_F / ||M||_F before symmetrizing

  double at(std::size_t i, std::size_t j) const { return matrix[i * size + j]; }
};

/// Unweighted, unreduced matrix of A + V on every grid node (row-major).
/// Throws InvalidArgument above kOracleMaxNodes.
std::vector<double> raw_matrix(Sector sector, const RadialGrid& grid,
                               const WellPotential& potential,
                               bool include_kernel = true);

/// Throws InvalidArgument above kOracleMaxNodes. With include_kernel false
/// only the potential diagonal is assembled.
DenseOperator assemble(Sector sector, const RadialGrid& grid,
                       const WellPotential& potential, bool include_kernel = true);

struct JacobiResult {
  std::vector<double> values;   ///< ascending
  std::vector<double> vectors;  ///< column k (row-major n x n) belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// `tol`. Throws NumericalInstability after `max_sweeps`.
JacobiResult jacobi_eigensystem(std::vector<double> a, std::size_t n,
                                double tol = 1e-10, int max_sweeps = 100);

struct Eigenpair {
  double value;
  SectorState state;  ///< unit sector norm, on the full grid
};

std::vector<Eigenpair> lowest_eigenpairs(const DenseOperator& op, std::size_t count);

/// max_k ||M v_k - lambda_k v_k|| over the returned pairs, in weighted
/// coordinates.
double max_residual(const DenseOperator& op, const std::vector<Eigenpair>& pairs);

}  // namespace uwell
