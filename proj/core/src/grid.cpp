#include "uwell/grid.hpp"

#include <cmath>
#include <string>

#include "uwell/error.hpp"

namespace uwell {

std::string_view to_string(GridKind kind) {
  return kind == GridKind::symmetric ? "symmetric" : "radial";
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = node(j);
  return out;
}

bool RadialGrid::can_coarsen(std::size_t factor) const noexcept {
  return factor > 0 && half_count_ % factor == 0 && half_count_ / factor > 0;
}

RadialGrid RadialGrid::coarsened(std::size_t factor) const {
  if (!can_coarsen(factor)) {
    throw InvalidArgument("grid with " + std::to_string(half_count_) +
                          " half cells cannot be coarsened by " +
                          std::to_string(factor));
  }
  return RadialGrid(kind_, cutoff_, step_ * static_cast<double>(factor),
                    half_count_ / factor);
}

RadialGrid make_grid(GridKind kind, double cutoff_a, double step_dx) {
  if (!(step_dx > 0.0) || !std::isfinite(step_dx)) {
    throw InvalidArgument("grid step must be positive and finite");
  }
  if (!(cutoff_a >= kWellRadius) || !std::isfinite(cutoff_a)) {
    throw InvalidArgument("cutoff a=" + std::to_string(cutoff_a) +
                          " lies inside the well (a must be >= 1)");
  }
  const double cells = cutoff_a / step_dx;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-6 * std::max(1.0, rounded)) {
    throw InvalidArgument("cutoff a must be an integer multiple of dx");
  }
  const auto half = static_cast<std::size_t>(rounded);
  const std::size_t count = kind == GridKind::symmetric ? 2 * half : half;
  if (half == 0 || count > kMaxGridNodes) {
    throw InvalidArgument("grid node count " + std::to_string(count) +
                          " outside [1, " + std::to_string(kMaxGridNodes) +
                          "]");
  }
  return RadialGrid(kind, cutoff_a, step_dx, half);
}

WellPotential::WellPotential(double v0) : v0_(v0) {
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    throw InvalidArgument("well height v0 must be positive");
  }
}

}  // namespace uwell
