#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uwell/error.hpp"
#include "uwell/evolution.hpp"
#include "uwell/operators.hpp"
#include "uwell/oracle.hpp"

using namespace uwell;

namespace {

const Sector kAll[] = {Sector::oned_even, Sector::oned_odd, Sector::l0_direct, Sector::l1,
                       Sector::l2};

double weighted_overlap(const SectorState& a, const SectorState& b) {
  return std::abs(sector_inner(a, b)) / (sector_norm(a) * sector_norm(b));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("two by two matrices") {
  const auto d = jacobi_eigensystem({1.0, 0.0, 0.0, 3.0}, 2);
  CHECK(d.values[0] == 1.0);
  CHECK(d.values[1] == 3.0);
  const auto s = jacobi_eigensystem({2.0, 1.0, 1.0, 2.0}, 2);
  CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(s.vectors[0]) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(jacobi_eigensystem({2.0, 1.0, 0.5, 2.0}, 2), InvalidArgument);
  CHECK_THROWS_AS(jacobi_eigensystem({1.0, 2.0, 3.0}, 2), InvalidArgument);
}

TEST_CASE("Jacobi on a random symmetric matrix") {
  const std::size_t n = 37;
  std::vector<double> a(n * n);
  unsigned state = 7;
  auto next = [&] {
    state = state * 1103515245u + 12345u;
    return static_cast<double>((state >> 8) % 10000) / 5000.0 - 1.0;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = next();
  const auto r = jacobi_eigensystem(a, n);
  CHECK(std::is_sorted(r.values.begin(), r.values.end()));
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
  double sum = 0.0;
  for (double v : r.values) sum += v;
  CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += a[i * n + j] * r.vectors[j * n + k];
      CHECK(av == doctest::Approx(r.values[k] * r.vectors[i * n + k]).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("hand-summed entries of the eight-node line matrix") {
  const RadialGrid g = make_grid(GridKind::symmetric, 2.0, 0.5);
  const WellPotential v(2.1);
  const auto m = raw_matrix(Sector::oned_odd, g, v);
  const double diag = 1.8125979629910302;
  const double off[] = {-0.63661977236758134, -0.15915494309189534, -0.070735530263064594,
                        -0.039788735772973834};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      double want = d == 0 ? diag + v(std::abs(g.node(i))) : d <= 4 ? off[d - 1] : 0.0;
      CAPTURE(i);
      CAPTURE(j);
      CHECK(m[i * 8 + j] == doctest::Approx(want).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("potential-only assembly is diagonal") {
  for (Sector s : kAll) {
    const RadialGrid g = make_grid(grid_kind_for(s), 4.0, 0.1);
    const WellPotential v(3.3);
    const DenseOperator op = assemble(s, g, v, false);
    for (std::size_t i = 0; i < op.size; ++i) {
      for (std::size_t j = 0; j < op.size; ++j) {
        const double want = i == j ? v(std::abs(g.node(op.nodes[i]))) : 0.0;
        CHECK(op.at(i, j) == want);
      }
    }
  }
}

TEST_CASE("columns reproduce the operator applies") {
  for (Sector s : kAll) {
    const RadialGrid g = make_grid(grid_kind_for(s), 3.0, 0.1);
    const WellPotential v(2.5);
    const auto m = raw_matrix(s, g, v);
    const std::size_t n = g.size();
    for (std::size_t j = 0; j < n; j += 3) {
      SectorState e(g, s);
      e[j] = 1.0;
      const auto col = apply_kernel_direct(e);
      const auto pot = apply_potential(e, v);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(m[i * n + j] == doctest::Approx(col[i] + pot[i]).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("node limit") {
  const RadialGrid g = make_grid(GridKind::radial, 21.0, 0.01);
  CHECK_THROWS_AS(assemble(Sector::l1, g, WellPotential(2.0)), InvalidArgument);
  const RadialGrid s = make_grid(GridKind::symmetric, 21.0, 0.01);
  CHECK_THROWS_AS(assemble(Sector::oned_odd, s, WellPotential(2.0)), InvalidArgument);
  CHECK_THROWS_AS(raw_matrix(Sector::oned_odd, make_grid(GridKind::symmetric, 11.0, 0.005),
                             WellPotential(2.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(assemble(Sector::l1, s, WellPotential(2.0)), InvalidArgument);
}

TEST_CASE("kernel alone is positive and nearly symmetric") {
  for (Sector s : kAll) {
    CAPTURE(to_string(s));
    const RadialGrid g = make_grid(grid_kind_for(s), 6.0, 0.05);
    const DenseOperator op = assemble(s, g, WellPotential(1e-300));
    CHECK(op.asymmetry < 1e-3);
    for (std::size_t i = 0; i < op.size; ++i)
      for (std::size_t j = 0; j < i; ++j) REQUIRE(op.at(i, j) == op.at(j, i));
    const auto r = jacobi_eigensystem(op.matrix, op.size);
    CHECK(r.values.front() >= -1e-6 * r.values.back());
  }
}

TEST_CASE("eigenpairs are accurate and orthonormal") {
  for (Sector s : kAll) {
    CAPTURE(to_string(s));
    const RadialGrid g = make_grid(grid_kind_for(s), 8.0, 0.05);
    const DenseOperator op = assemble(s, g, WellPotential(6.0));
    const auto pairs = lowest_eigenpairs(op, 3);
    CHECK(max_residual(op, pairs) < 1e-8);
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      CHECK(sector_norm(pairs[a].state) == doctest::Approx(1.0).epsilon(1e-10));
      for (std::size_t b = 0; b < a; ++b) {
        CHECK(std::abs(sector_inner(pairs[a].state, pairs[b].state)) < 1e-10);
      }
      if (a > 0) CHECK(pairs[a - 1].value <= pairs[a].value);
    }
    CHECK_THROWS_AS(lowest_eigenpairs(op, op.size + 1), InvalidArgument);
  }
}

TEST_CASE("small-step evolution agrees with the dense spectrum") {
  const RadialGrid g = make_grid(GridKind::radial, 6.0, 0.02);
  const DenseOperator op = assemble(Sector::l1, g, WellPotential(6.7));
  const auto pairs = lowest_eigenpairs(op, 2);
  SolverParams p;
  p.h = g.step() / 64.0;
  p.eig_tol = 1e-11;
  p.max_iters = 2000000;
  const auto rs = solve_sector(6.7, Sector::l1, 2, g, p);
  for (int k = 0; k < 2; ++k) {
    CAPTURE(k);
    REQUIRE(rs[k].converged);
    CHECK(std::abs(rs[k].eigenvalue_at_a - pairs[k].value) < 1e-3 * pairs[k].value);
    CHECK(weighted_overlap(rs[k].eigenfunction, pairs[k].state) > 0.999);
  }
}

}

TEST_SUITE("oracle_wide") {

TEST_CASE("second odd level on the widest dense line grid") {
  const RadialGrid g = make_grid(GridKind::symmetric, 20.0, 0.01);
  const DenseOperator op = assemble(Sector::oned_odd, g, WellPotential(2.1));
  REQUIRE(op.size == kOracleMaxNodes);
  const auto pairs = lowest_eigenpairs(op, 2);
  SolverParams p;
  p.h = g.step() / 64.0;
  p.eig_tol = 1e-11;
  p.max_iters = 4000000;
  const auto rs = solve_sector(2.1, Sector::oned_odd, 2, g, p);
  REQUIRE(rs[1].converged);
  MESSAGE("dense " << pairs[1].value << "  evolution " << rs[1].eigenvalue_at_a);
  CHECK(std::abs(rs[1].eigenvalue_at_a - pairs[1].value) < 1e-3 * pairs[1].value);
  CHECK(weighted_overlap(rs[1].eigenfunction, pairs[1].state) > 0.999);
}

}
