#include "uwell/renorm.hpp"

#include <cmath>
#include <numbers>

#include "uwell/error.hpp"
#include "uwell/evolution.hpp"

namespace uwell {

std::string_view to_string(TailRoute route) {
  return route == TailRoute::two_sided ? "two_sided" : "one_sided";
}

double tail_constant(TailRoute route) noexcept {
  return (route == TailRoute::two_sided ? 2.0 : 4.0) / std::numbers::pi;
}

TailRoute tail_route_for(Sector sector) noexcept {
  return is_one_dimensional(sector) ? TailRoute::two_sided
                                    : TailRoute::one_sided;
}

double tail_correction(double a, double b, TailRoute route) {
  if (!(a > 0.0)) throw InvalidArgument("tail_correction: cutoff a must be > 0");
  if (std::isnan(b) || b < a) {
    throw InvalidArgument("tail_correction: need b >= a");
  }
  const double inv_b = std::isinf(b) ? 0.0 : 1.0 / b;
  return tail_constant(route) * (1.0 / a - inv_b);
}

double renormalized_value(double eigenvalue_at_a, double cutoff_a, Sector sector) {
  return eigenvalue_at_a +
         tail_correction(cutoff_a, kInfiniteCutoff, tail_route_for(sector));
}

EigenResult renormalize(const EigenResult& result) {
  EigenResult out = result;
  out.eigenvalue_renormalized =
      renormalized_value(result.eigenvalue_at_a, result.cutoff_a, result.sector);
  return out;
}

}  // namespace uwell
