#pragma once

#include <limits>
#include <string_view>

#include "uwell/sector.hpp"

namespace uwell {

struct EigenResult;

/// How the truncated tail enters: both sides of a symmetric interval, or
/// one side of [0, a].
enum class TailRoute { two_sided, one_sided };

std::string_view to_string(TailRoute route);

/// 2/pi for two_sided, 4/pi for one_sided.
double tail_constant(TailRoute route) noexcept;

/// Fixed by the sector: 1D routes are two-sided, radial ones one-sided.
TailRoute tail_route_for(Sector sector) noexcept;

inline constexpr double kInfiniteCutoff = std::numeric_limits<double>::infinity();

/// c (1/a - 1/b); b may be kInfiniteCutoff.
double tail_correction(double a, double b, TailRoute route);

/// E(a) + tail_correction(a, inf) for the route of the sector.
double renormalized_value(double eigenvalue_at_a, double cutoff_a, Sector sector);

/// Copy of `result` with eigenvalue_renormalized filled in.
EigenResult renormalize(const EigenResult& result);

}  // namespace uwell
