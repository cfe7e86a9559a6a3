#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "uwell/error.hpp"
#include "uwell/fast_operator.hpp"
#include "uwell/kernels.hpp"
#include "uwell/operators.hpp"

using namespace uwell;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void compare_with_direct(Sector s, double a, double dx, unsigned seed) {
  const RadialGrid g = make_grid(grid_kind_for(s), a, dx);
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  SectorState f(g, s);
  // smooth plus noise, decaying like a bound state
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    f[j] = std::exp(-std::abs(x)) * (1.0 + 0.3 * nd(rng));
  }
  if (s == Sector::oned_odd) symmetrize_parity(f);
  KernelOperator op(g, s);
  const auto fast = op.apply(f.samples());
  const auto slow = apply_kernel_direct(f);
  const double scale = max_abs(slow);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(fast[j] - slow[j]));
  CAPTURE(to_string(s));
  CAPTURE(a);
  CAPTURE(dx);
  CHECK(worst < 1e-10 * scale);
}

}  // namespace

TEST_SUITE("fast_operator") {

TEST_CASE("transform apply equals the nodal sums") {
  for (Sector s : {Sector::oned_even, Sector::oned_odd, Sector::l0_direct, Sector::l1,
                   Sector::l2}) {
    compare_with_direct(s, 2.0, 0.5, 1);
    compare_with_direct(s, 5.0, 0.05, 2);
    compare_with_direct(s, 8.0, 0.01, 3);   // past the stable-row block
    compare_with_direct(s, 30.0, 0.01, 4);
  }
}

TEST_CASE("diagonal matches the kernel tables") {
  const RadialGrid g = make_grid(GridKind::radial, 6.0, 0.02);
  for (Sector s : {Sector::l0_direct, Sector::l1, Sector::l2}) {
    KernelOperator op(g, s);
    const auto d = kernels::radial_diagonal(g);
    REQUIRE(op.diagonal().size() == d.size());
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(op.diagonal()[j] == doctest::Approx(d[j]));
    CHECK(op.stable_rows() <= g.size());
  }
  const RadialGrid sg = make_grid(GridKind::symmetric, 6.0, 0.02);
  KernelOperator line(sg, Sector::oned_odd);
  CHECK(line.diagonal()[0] == doctest::Approx(kernels::line_diagonal(sg)));
}

TEST_CASE("wide-grid sine through the transform path") {
  const RadialGrid g = make_grid(GridKind::symmetric, 50.0, 0.001);
  SectorState f(g, Sector::oned_odd);
  for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::sin(2.0 * std::numbers::pi * g.node(j));
  KernelOperator op(g, Sector::oned_odd);
  const auto out = op.apply(f.samples());
  const std::size_t at = g.half_count() + 124;
  // single-point direct summation done outside this code base
  CHECK(out[at] == doctest::Approx(4.415505697285961).epsilon(1e-9));
  CHECK(out[g.half_count()] == doctest::Approx(0.019679438432431733).epsilon(1e-7));
}

TEST_CASE("apply rejects mismatched spans") {
  const RadialGrid g = make_grid(GridKind::radial, 4.0, 0.1);
  KernelOperator op(g, Sector::l1);
  std::vector<double> in(g.size(), 1.0);
  std::vector<double> out(g.size() - 1);
  CHECK_THROWS_AS(op.apply(in, out), InvalidArgument);
  CHECK_THROWS_AS(KernelOperator(g, Sector::oned_odd), InvalidArgument);
}

TEST_CASE("operator is movable") {
  const RadialGrid g = make_grid(GridKind::radial, 4.0, 0.1);
  KernelOperator a(g, Sector::l2);
  KernelOperator b(std::move(a));
  CHECK(b.sector() == Sector::l2);
  CHECK(b.grid() == g);
}

TEST_CASE("transform sizes factor into 2, 3, 5, 7") {
  for (std::size_t n : {1u, 17u, 1000u, 100001u, 300001u}) {
    std::size_t m = fft_friendly_size(n);
    CHECK(m >= n);
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (m % p == 0) m /= p;
    CHECK(m == 1);
  }
}

}
