#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uwell/error.hpp"
#include "uwell/spectrum.hpp"

using namespace uwell;
using std::numbers::pi;

namespace {

EigenResult fake(Sector s, const RadialGrid& g, double v0, double e_ren, SolveStatus st) {
  EigenResult r{SectorState(g, s)};
  r.v0 = v0;
  r.sector = s;
  r.eigenvalue_renormalized = e_ren;
  r.status = st;
  r.converged = st == SolveStatus::converged;
  return r;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("verdict rule uses the renormalized value strictly") {
  const RadialGrid g = make_grid(GridKind::radial, 2.0, 0.5);
  CHECK(classify(fake(Sector::l1, g, 2.0, 1.99, SolveStatus::converged)) == Verdict::exists);
  CHECK(classify(fake(Sector::l1, g, 2.0, 2.0, SolveStatus::converged)) == Verdict::absent);
  CHECK(classify(fake(Sector::l1, g, 2.0, 2.0054, SolveStatus::converged)) == Verdict::absent);
  CHECK(classify(fake(Sector::l1, g, 2.0, 1.0, SolveStatus::escaped)) == Verdict::absent);
  CHECK(classify(fake(Sector::l1, g, 2.0, 1.0, SolveStatus::max_iterations)) ==
        Verdict::undetermined);
}

TEST_CASE("existence on coarse grids") {
  const RadialGrid g = make_grid(GridKind::radial, 10.0, 0.02);
  const Existence deep = exists_bound_state(6.0, Sector::l1, 1, g, {});
  CHECK(deep.verdict == Verdict::exists);
  CHECK(deep.result.eigenvalue_renormalized < 6.0);
  const Existence shallow = exists_bound_state(1.0, Sector::l1, 1, g, {});
  CHECK(shallow.verdict == Verdict::absent);
}

TEST_CASE("scan without a bracket in range") {
  const RadialGrid g = make_grid(GridKind::radial, 10.0, 0.02);
  ScanOptions opt;
  opt.guide_dx = 0.0;
  const ThresholdReport rep = scan_threshold(Sector::l1, 1, 0.1, 0.3, 0.1, g, {}, opt);
  CHECK_FALSE(rep.found);
  CHECK_THROWS_AS(scan_threshold(Sector::l1, 1, 0.3, 0.1, 0.1, g, {}), InvalidArgument);
  CHECK_THROWS_AS(scan_threshold(Sector::l1, 1, 0.1, 0.3, 0.0, g, {}), InvalidArgument);
}

TEST_CASE("coarse scan brackets the ground state") {
  const RadialGrid g = make_grid(GridKind::symmetric, 10.0, 0.01);
  ScanOptions opt;
  opt.guide_dx = 0.02;
  const ThresholdReport rep = scan_threshold(Sector::oned_odd, 1, 1.5, 3.0, 0.1, g, {}, opt);
  REQUIRE(rep.found);
  CHECK(rep.v0_upper - rep.v0_lower == doctest::Approx(0.1).epsilon(1e-9));
  REQUIRE(rep.upper_result);
  CHECK(classify(*rep.upper_result) == Verdict::exists);
  if (rep.lower_result) CHECK(classify(*rep.lower_result) != Verdict::exists);
  CHECK(rep.v0_upper > 1.9);
  CHECK(rep.v0_upper < 2.4);
}

TEST_CASE("tunneling ratio") {
  SUBCASE("state confined to the well") {
    const RadialGrid g = make_grid(GridKind::radial, 4.0, 0.1);
    EigenResult r = fake(Sector::l1, g, 3.0, 2.0, SolveStatus::converged);
    for (std::size_t j = 0; j < g.size(); ++j) r.eigenfunction[j] = g.node(j) < 1.0 ? 1.0 : 0.0;
    normalize(r.eigenfunction);
    CHECK(probability_ratio(r) == 0.0);
    r.eigenfunction[0] *= 2.0;
    CHECK_THROWS_AS(probability_ratio(r), InvalidArgument);
  }
  SUBCASE("nodal sums recomputed on a converged state") {
    const RadialGrid g = make_grid(GridKind::symmetric, 50.0, 0.004);
    const auto rs = solve_sector(2.1, Sector::oned_odd, 1, g, {});
    REQUIRE(rs[0].converged);
    const SectorState& f = rs[0].eigenfunction;
    double in = 0.0;
    double out = 0.0;
    for (std::size_t j = g.half_count(); j < g.size(); ++j) {
      const double x = g.node(j);
      const double r = x;  // f(r) = g(r)/r, so r^2 f^2 = g^2
      const double ff = f[j] / r;
      (x < 1.0 ? in : out) += 4.0 * pi * r * r * ff * ff * g.step();
    }
    const double want = out / in;
    CHECK(probability_ratio(rs[0]) == doctest::Approx(want).epsilon(1e-12));
    CHECK(want > 0.3);
    CHECK(want < 0.5);
  }
}

TEST_CASE("angular factors") {
  CHECK(angular_density(0, 0, 0.3) == doctest::Approx(1.0 / (4.0 * pi)));
  CHECK(angular_density(1, 0, pi / 2.0) == doctest::Approx(0.0).epsilon(1e-30).scale(1.0));
  CHECK(angular_density(2, 0, std::acos(1.0 / std::sqrt(3.0))) ==
        doctest::Approx(0.0).scale(1.0));
  CHECK(angular_density(2, 2, 0.0) == 0.0);
  CHECK(angular_density(2, -2, pi) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(angular_density(1, 2, 0.1), InvalidArgument);
  CHECK_THROWS_AS(angular_density(3, 0, 0.1), InvalidArgument);
  // each |Y|^2 integrates to one over the sphere
  for (int l = 0; l <= 2; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int steps = 20000;
      double s = 0.0;
      for (int k = 0; k < steps; ++k) {
        const double th = (k + 0.5) * pi / steps;
        s += angular_density(l, m, th) * std::sin(th);
      }
      CHECK(2.0 * pi * s * pi / steps == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("density field and radial part") {
  const RadialGrid g = make_grid(GridKind::radial, 10.0, 0.02);
  const EigenResult r = solve_sector(6.0, Sector::l1, 1, g, {}).front();
  const auto rp = radial_part(r);
  double mass = 0.0;
  for (const auto& [rr, val] : rp) mass += val * val * rr * rr * g.step();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  DensityOptions opt;
  opt.theta_samples = 181;
  opt.r_max = 3.0;
  opt.r_stride = 5;
  const auto field = density_profile(r, 1, 0, opt);
  REQUIRE_FALSE(field.empty());
  for (const auto& s : field) {
    CHECK(s.r <= 3.0);
    CHECK(s.value >= 0.0);
    if (std::abs(s.theta - pi / 2.0) < 1e-12) CHECK(s.value == doctest::Approx(0.0).scale(1.0));
  }
  CHECK_THROWS_AS(density_profile(r, 1, 2, opt), InvalidArgument);
  CHECK_THROWS_AS(density_profile(r, 2, 0, opt), InvalidArgument);

  const auto polar = density_profile(solve_sector(8.1, Sector::l2, 1, g, {}).front(), 2, 2, opt);
  for (const auto& s : polar) {
    if (s.theta == 0.0 || std::abs(s.theta - pi) < 1e-12) CHECK(s.value == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("line-route radial part is g over r") {
  const RadialGrid g = make_grid(GridKind::symmetric, 10.0, 0.02);
  const EigenResult r = solve_sector(3.0, Sector::oned_odd, 1, g, {}).front();
  const auto rp = radial_part(r);
  REQUIRE(rp.size() == g.half_count());
  double mass = 0.0;
  for (const auto& [rr, val] : rp) mass += val * val * rr * rr * g.step();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  const std::size_t j = g.half_count() + 10;
  CHECK(rp[10].first == doctest::Approx(g.node(j)));
  CHECK(rp[10].second / rp[20].second ==
        doctest::Approx((r.eigenfunction[j] / g.node(j)) /
                        (r.eigenfunction[j + 10] / g.node(j + 10))));
}

TEST_CASE("nonrelativistic count") {
  CHECK(nonrel_bound_count(2.0) == 0);
  CHECK(nonrel_bound_count(5.0) == 1);
  CHECK(nonrel_bound_count(25.0) == 2);
  CHECK(nonrel_bound_count(500.0) == 7);
  CHECK_THROWS_AS(nonrel_bound_count(pi * pi / 4.0), InvalidArgument);
  CHECK_THROWS_AS(nonrel_bound_count(9.0 * pi * pi / 4.0), InvalidArgument);
  CHECK_THROWS_AS(nonrel_bound_count(0.0), InvalidArgument);
  // count n exactly when (2n-1)^2 pi^2/4 < v0 < (2n+1)^2 pi^2/4
  for (double v0 = 0.05; v0 < 400.0; v0 += 0.37) {
    const int n = nonrel_bound_count(v0);
    if (n >= 1) CHECK((2 * n - 1) * (2 * n - 1) * pi * pi / 4.0 < v0);
    CHECK(v0 < (2 * n + 1) * (2 * n + 1) * pi * pi / 4.0);
  }
}

TEST_CASE("infinite well data") {
  CHECK(infinite_well_asymptote(5) == doctest::Approx(7.46128).epsilon(1e-6));
  CHECK(infinite_well_asymptote(2) == doctest::Approx(2.74889).epsilon(1e-6));
  for (int n = 1; n < 10; ++n) {
    CHECK(infinite_well_asymptote(2 * n + 2) - infinite_well_asymptote(2 * n) ==
          doctest::Approx(pi).epsilon(1e-14));
  }
  CHECK_THROWS_AS(infinite_well_asymptote(0), InvalidArgument);
  CHECK(infinite_well_reference(0, 1) == doctest::Approx(2.754769));
  CHECK_FALSE(infinite_well_reference(3, 1).has_value());
}

TEST_CASE("small table keeps sector columns ordered") {
  SolverParams p;
  const auto cells = spectrum_table({2.1, 5.2}, {{Sector::oned_odd, 2}, {Sector::l1, 1}}, 10.0,
                                    0.02, p);
  REQUIRE(cells.size() == 6);
  int present = 0;
  for (const auto& c : cells) {
    CHECK(c.error.empty());
    if (c.verdict == Verdict::exists) {
      ++present;
      REQUIRE(c.result);
      CHECK(c.result->eigenvalue_renormalized < c.v0);
    }
  }
  CHECK(present >= 2);
  for (double v0 : {2.1, 5.2}) {
    const TableCell* first = nullptr;
    const TableCell* second = nullptr;
    for (const auto& c : cells) {
      if (c.v0 != v0 || c.sector != Sector::oned_odd) continue;
      (c.n == 1 ? first : second) = &c;
    }
    REQUIRE(first);
    REQUIRE(second);
    if (second->verdict == Verdict::exists) {
      CHECK(first->result->eigenvalue_renormalized < second->result->eigenvalue_renormalized);
    }
  }
}

}
