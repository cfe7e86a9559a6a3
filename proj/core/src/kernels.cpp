#include "uwell/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "uwell/error.hpp"

namespace uwell::kernels {
namespace {

constexpr double kPi = std::numbers::pi;

using CoefficientTable = std::array<std::array<double, kSeriesTerms>, 3>;

constexpr CoefficientTable make_coefficients() {
  CoefficientTable t{};
  for (int k = 0; k < kSeriesTerms; ++k) {
    const double kk = k;
    t[0][k] = 4.0 * (kk + 1.0);
    t[1][k] = 8.0 * (kk + 1.0) * (kk + 2.0) / (2.0 * kk + 3.0);
    t[2][k] = 16.0 * (kk + 1.0) * (kk + 2.0) * (kk + 3.0) /
              ((2.0 * kk + 3.0) * (2.0 * kk + 5.0));
  }
  return t;
}

constexpr CoefficientTable kCoefficients = make_coefficients();

void check_orbital(int l) {
  if (l < 0 || l > kMaxOrbital) {
    throw InvalidArgument("no reduced kernel for orbital index " +
                          std::to_string(l));
  }
}

}  // namespace

double series_coefficient(int l, int k) {
  check_orbital(l);
  if (k < 0 || k >= kSeriesTerms) {
    throw InvalidArgument("series coefficient index out of range");
  }
  return kCoefficients[l][k];
}

double radial_weight_closed(int l, double r, double p) {
  check_orbital(l);
  const double diff = r - p;
  const double sum = r + p;
  // 1/(r-p)^2 - 1/(r+p)^2
  const double quad = 4.0 * r * p / (diff * diff * sum * sum);
  if (l == 0) return r * quad / (kPi * p);
  // ln((r-p)^2) - ln((r+p)^2)
  const double logs = 2.0 * std::log(std::abs(diff) / sum);
  const double p2 = p * p;
  const double r2 = r * r;
  if (l == 1) {
    return (r * (r2 + p2) * quad + r * logs) / (2.0 * kPi * p2 * p);
  }
  const double poly = r * (3.0 * r2 * r2 + 3.0 * p2 * p2 - 2.0 * r2 * p2);
  return (poly * quad + 3.0 * r * (r2 + p2) * logs) /
         (4.0 * kPi * p2 * p2 * p);
}

double radial_weight(int l, double r, double p) {
  check_orbital(l);
  const bool r_small = r < p;
  const double big = r_small ? p : r;
  const double t = (r_small ? r : p) / big;
  if (t >= kSeriesCrossover) return radial_weight_closed(l, r, p);

  const double t2 = t * t;
  const auto& c = kCoefficients[l];
  double acc = 0.0;
  for (int k = kSeriesTerms - 1; k >= 0; --k) acc = acc * t2 + c[k];
  if (r_small) {
    for (int k = 0; k <= l; ++k) acc *= t2;
  }
  return acc / (kPi * big * big);
}

double line_weight(double z) { return 1.0 / (kPi * z * z); }

double line_diagonal(const RadialGrid& grid) {
  long double acc = 0.0L;
  // smallest terms first
  for (std::size_t k = grid.half_count(); k >= 1; --k) {
    const long double kk = static_cast<long double>(k);
    acc += 1.0L / (kk * kk);
  }
  return static_cast<double>(2.0L * acc /
                             (static_cast<long double>(kPi) * grid.step()));
}

std::vector<double> radial_diagonal(const RadialGrid& grid) {
  if (grid.kind() != GridKind::radial) {
    throw InvalidArgument("radial_diagonal needs a radial grid");
  }
  const std::size_t m = grid.size();
  // harmonic partial sums H(n) and H2(n) for n = 0..2m
  std::vector<long double> h1(2 * m + 1, 0.0L);
  std::vector<long double> h2(2 * m + 1, 0.0L);
  for (std::size_t n = 1; n <= 2 * m; ++n) {
    const long double nn = static_cast<long double>(n);
    h1[n] = h1[n - 1] + 1.0L / nn;
    h2[n] = h2[n - 1] + 1.0L / (nn * nn);
  }
  std::vector<double> diag(m);
  const long double pi = kPi;
  for (std::size_t i = 0; i < m; ++i) {
    // index units: p = i + 1/2, r_j = j + 1/2
    const long double p = static_cast<long double>(i) + 0.5L;
    const std::size_t above = m - 1 - i;
    const long double toeplitz = (h1[above] - h1[i]) + p * (h2[i] + h2[above]);
    // the j = i image term 1/(4p) is excluded along with the node itself
    const long double hankel =
        (h1[i + m] - h1[i]) - p * (h2[i + m] - h2[i]) - 0.25L / p;
    diag[i] = static_cast<double>((toeplitz - hankel) / (pi * p * grid.step()));
  }
  return diag;
}

}  // namespace uwell::kernels
