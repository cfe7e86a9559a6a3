#include "uwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "uwell/error.hpp"

namespace uwell {
namespace {

using ld = long double;
constexpr ld kPiL = std::numbers::pi_v<long double>;

// sum_{r != p} f(r) W_l(r, p) dr weight, written out term by term
ld weight_entry(int l, ld r, ld p) {
  const ld quad = 1.0L / ((r - p) * (r - p)) - 1.0L / ((r + p) * (r + p));
  if (l == 0) return r * quad / (kPiL * p);
  const ld logs = std::log((r - p) * (r - p)) - std::log((r + p) * (r + p));
  if (l == 1) {
    return ((r / p) * ((r * r + p * p) / (p * p)) * quad + r * logs / (p * p * p)) /
           (2.0L * kPiL);
  }
  const ld poly = (3.0L * (r * r * r * r + p * p * p * p) - 2.0L * r * r * p * p) /
                  (p * p * p * p);
  return ((r / p) * poly * quad + 3.0L * r * (r * r + p * p) * logs / std::pow(p, 5)) /
         (4.0L * kPiL);
}

// A + V entry between grid nodes i and j, straight from the nodal sums
class EntryRule {
 public:
  EntryRule(Sector sector, const RadialGrid& grid, const WellPotential& potential,
            bool include_kernel)
      : sector_(sector), grid_(grid), potential_(potential), kernel_(include_kernel) {
    if (kernel_ && is_one_dimensional(sector_)) {
      // |u - x| <= a reaches past the grid, where f = 0
      for (std::size_t k = grid_.half_count(); k >= 1; --k) {
        line_diag_ += 2.0L / (kPiL * static_cast<ld>(k) * static_cast<ld>(k) * dx());
      }
    }
    if (kernel_ && !is_one_dimensional(sector_)) {
      const std::size_t n = grid_.size();
      radial_diag_.assign(n, 0.0L);
      for (std::size_t i = 0; i < n; ++i) {
        const ld p = grid_.node(i);
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) radial_diag_[i] += weight_entry(0, grid_.node(j), p) * dx();
        }
      }
    }
  }

  ld operator()(std::size_t i, std::size_t j) const {
    ld v = i == j ? static_cast<ld>(potential_(std::abs(grid_.node(i)))) : 0.0L;
    if (!kernel_) return v;
    if (is_one_dimensional(sector_)) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d == 0) return v + line_diag_;
      if (d > grid_.half_count()) return v;
      const ld z = static_cast<ld>(d) * dx();
      return v - dx() / (kPiL * z * z);
    }
    if (i == j) return v + radial_diag_[i];
    return v - weight_entry(orbital_index(sector_), grid_.node(j), grid_.node(i)) * dx();
  }

 private:
  ld dx() const { return grid_.step(); }

  Sector sector_;
  const RadialGrid& grid_;
  const WellPotential& potential_;
  bool kernel_;
  ld line_diag_ = 0.0L;
  std::vector<ld> radial_diag_;
};

void check_kind(Sector sector, const RadialGrid& grid) {
  if (grid.kind() != grid_kind_for(sector)) {
    throw InvalidArgument("dense assembly: grid kind does not match the sector");
  }
}

void check_dimension(std::size_t n) {
  if (n > kOracleMaxNodes) {
    throw InvalidArgument("dense assembly: dimension " + std::to_string(n) +
                          " exceeds the limit of " + std::to_string(kOracleMaxNodes));
  }
}

}  // namespace

std::vector<double> raw_matrix(Sector sector, const RadialGrid& grid,
                               const WellPotential& potential, bool include_kernel) {
  check_kind(sector, grid);
  const std::size_t n = grid.size();
  check_dimension(n);
  const EntryRule entry(sector, grid, potential, include_kernel);
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = static_cast<double>(entry(i, j));
  return out;
}

DenseOperator assemble(Sector sector, const RadialGrid& grid,
                       const WellPotential& potential, bool include_kernel) {
  check_kind(sector, grid);
  const std::size_t total = grid.size();
  DenseOperator op{sector, grid, 0, {}, {}, {}, 0.0};
  std::vector<ld> raw;
  if (is_one_dimensional(sector)) {
    // parity reduction onto the x > 0 nodes
    const std::size_t half = grid.half_count();
    check_dimension(half);
    const EntryRule entry(sector, grid, potential, include_kernel);
    const ld sign = sector == Sector::oned_odd ? -1.0L : 1.0L;
    for (std::size_t j = half; j < total; ++j) op.nodes.push_back(j);
    op.size = half;
    raw.assign(half * half, 0.0L);
    for (std::size_t a = 0; a < half; ++a) {
      for (std::size_t b = 0; b < half; ++b) {
        const std::size_t i = op.nodes[a];
        const std::size_t j = op.nodes[b];
        raw[a * half + b] = entry(i, j) + sign * entry(i, grid.mirror(j));
      }
      op.sqrt_weights.push_back(std::sqrt(2.0 * grid.step()));
    }
  } else {
    check_dimension(total);
    const EntryRule entry(sector, grid, potential, include_kernel);
    op.size = total;
    op.nodes.resize(total);
    std::iota(op.nodes.begin(), op.nodes.end(), std::size_t{0});
    raw.resize(total * total);
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = 0; j < total; ++j) raw[i * total + j] = entry(i, j);
      op.sqrt_weights.push_back(
          std::sqrt(sector_weight(sector, grid.node(i)) * grid.step()));
    }
  }

  const std::size_t n = op.size;
  op.matrix.assign(n * n, 0.0);
  ld asym = 0.0L;
  ld norm = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ld si = op.sqrt_weights[i];
      const ld sj = op.sqrt_weights[j];
      const ld mij = raw[i * n + j] * si / sj;
      const ld mji = raw[j * n + i] * sj / si;
      asym += (mij - mji) * (mij - mji);
      norm += mij * mij;
      op.matrix[i * n + j] = static_cast<double>(0.5L * (mij + mji));
    }
  }
  op.asymmetry = norm > 0.0L ? static_cast<double>(std::sqrt(asym / norm)) : 0.0;
  return op;
}

JacobiResult jacobi_eigensystem(std::vector<double> a, std::size_t n, double tol,
                                int max_sweeps) {
  if (a.size() != n * n) throw InvalidArgument("jacobi: matrix is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (a[i * n + j] != a[j * n + i]) throw InvalidArgument("jacobi: matrix not symmetric");
    }
  }
  // rows of vt are the eigenvectors
  std::vector<double> vt(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  // round-robin pairing: every round is a set of disjoint rotations, applied
  // to rows first and then to columns, both passes walking rows contiguously
  const std::size_t slots = n + (n % 2);
  std::vector<std::size_t> ring(slots);
  std::iota(ring.begin(), ring.end(), std::size_t{0});
  struct Rot {
    std::size_t p, q;
    double c, s;
    double dp, dq;  // diagonal once both passes are done
  };
  std::vector<Rot> rots;
  rots.reserve(slots / 2);
  int sweep = 0;
  for (double off = off_norm(); off >= tol; off = off_norm()) {
    if (sweep++ >= max_sweeps) {
      throw NumericalInstability("Jacobi rotations did not converge");
    }
    const double skip = 0.1 * off / static_cast<double>(n * n);
    for (std::size_t round = 0; round + 1 < slots; ++round) {
      rots.clear();
      for (std::size_t k = 0; k < slots / 2; ++k) {
        std::size_t p = ring[k];
        std::size_t q = ring[slots - 1 - k];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        const double apq = a[p * n + q];
        if (std::abs(apq) <= skip) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        rots.push_back({p, q, c, t * c, a[p * n + p] - t * apq, a[q * n + q] + t * apq});
      }
      std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
      if (rots.empty()) continue;
      auto rotate_rows = [n](double* m, const Rot& r) {
        double* rp = m + r.p * n;
        double* rq = m + r.q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = rp[k];
          const double y = rq[k];
          rp[k] = r.c * x - r.s * y;
          rq[k] = r.s * x + r.c * y;
        }
      };
      for (const Rot& r : rots) {
        rotate_rows(a.data(), r);
        rotate_rows(vt.data(), r);
      }
      for (std::size_t k = 0; k < n; ++k) {
        double* row = &a[k * n];
        for (const Rot& r : rots) {
          const double x = row[r.p];
          const double y = row[r.q];
          row[r.p] = r.c * x - r.s * y;
          row[r.q] = r.s * x + r.c * y;
        }
      }
      for (const Rot& r : rots) {
        a[r.p * n + r.p] = r.dp;
        a[r.q * n + r.q] = r.dq;
        a[r.p * n + r.q] = a[r.q * n + r.p] = 0.0;
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  JacobiResult out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = vt[order[k] * n + i];
  }
  return out;
}

std::vector<Eigenpair> lowest_eigenpairs(const DenseOperator& op, std::size_t count) {
  const std::size_t n = op.size;
  if (count > n) throw InvalidArgument("more eigenpairs requested than the dimension");
  const JacobiResult jr = jacobi_eigensystem(op.matrix, n);
  std::vector<Eigenpair> out;
  const double sign = op.sector == Sector::oned_odd ? -1.0 : 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    SectorState s(op.grid, op.sector);
    for (std::size_t a = 0; a < n; ++a) {
      const double f = jr.vectors[a * n + k] / op.sqrt_weights[a];
      s[op.nodes[a]] = f;
      if (is_one_dimensional(op.sector)) s[op.grid.mirror(op.nodes[a])] = sign * f;
    }
    out.push_back({jr.values[k], std::move(s)});
  }
  return out;
}

double max_residual(const DenseOperator& op, const std::vector<Eigenpair>& pairs) {
  const std::size_t n = op.size;
  double worst = 0.0;
  for (const auto& pr : pairs) {
    std::vector<double> y(n);
    for (std::size_t a = 0; a < n; ++a) y[a] = pr.state[op.nodes[a]] * op.sqrt_weights[a];
    double res = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = -pr.value * y[i];
      for (std::size_t j = 0; j < n; ++j) acc += op.at(i, j) * y[j];
      res += acc * acc;
      norm += y[i] * y[i];
    }
    worst = std::max(worst, std::sqrt(res / norm));
  }
  return worst;
}

}  // namespace uwell
