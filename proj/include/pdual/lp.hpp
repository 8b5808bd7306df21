#pragma once

// Exact point-in-convex-hull by phase-1 simplex over Q (Bland's rule).

#include <vector>

#include "pdual/poly.hpp"

namespace pdual {

using QPoint = std::vector<Rational>;

/// Either λ ≥ 0 with Σλ = 1 and Σλᵢpᵢ = q, or a Farkas pair (h, h0) with
/// h·pᵢ + h0 ≥ 0 for every i and h·q + h0 < 0.
struct HullMembership {
  bool inside = false;
  std::vector<Rational> lambda;  // one per point, when inside
  QPoint h;                      // when outside
  Rational h0;
};

/// Throws DimensionError on ragged input or an empty point set.
HullMembership convexMembership(const std::vector<QPoint>& points, const QPoint& q);

/// Exact re-check of either certificate.
bool verifyMembership(const std::vector<QPoint>& points, const QPoint& q, const HullMembership& m);

}  // namespace pdual
