#pragma once

// Quadrature on a smooth plane curve viewed as a degree-d cover of P¹.
//
// After a rational orthogonal change of coordinates U (so [0:0:1] is off the
// curve) the projection ζ ↦ [ζ₀:ζ₁] has degree d. The base sphere is split
// by a smooth partition of unity: log-polar patches around special points
// (branch points, plus points where a group element concentrates its
// pulled-back metric) and a Clenshaw–Curtis polar grid on the two unit
// disks |x| ≤ 1, |y| ≤ 1 for the rest. Every base node carries the d fiber
// points with exact first and second derivatives of the lift.
//
// Weights integrate against μ = dA/π in the chart coordinate, so
// Σ wᵢ ρ(zᵢ, z′ᵢ) ≈ ∫_X ω = d for the FS density ρ.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pdual/curve.hpp"
#include "pdual/kernels.hpp"

namespace pdual {

struct CurveSample {
  Vec3 z, dz, d2z;  // lift and its derivatives in the chart coordinate
  Vec3 grad;        // ∇F(z)
  double weight = 0.0;
  double coarseWeight = 0.0;
  int chart = 0;  // 0: x = ζ₁/ζ₀, 1: y = ζ₀/ζ₁
};

/// Point of the base line as a unit vector (ζ₀, ζ₁).
using BasePoint = std::array<Complex, 2>;

/// Chordal distance on the unit Riemann sphere (≤ 2).
double chordal(const BasePoint& a, const BasePoint& b);

/// One patch of the partition of unity. Patches are ordered fine to coarse;
/// patch k carries η_k·Π_{j<k}(1 − η_j) and the rest region Π_j(1 − η_j).
struct BaseNode {
  BasePoint center;
  double radius = 0.0;  // chordal support radius
  bool leaf = true;     // centred on a special point, not on a cluster
};

/// F∘U with U rational orthogonal, and the two affine charts of the cover.
class CurveProjection {
 public:
  /// Picks U from `seed`; throws NumericFailure if no admissible U is
  /// found in 10 tries.
  CurveProjection(const PlaneCurve& curve, std::uint64_t seed);

  const PlaneCurve& curve() const { return *curve_; }
  const QMatrix& coordinateChange() const { return u_; }
  const CMatrix& coordinateChangeC() const { return uc_; }

  /// Coefficients (ascending in w) of the fiber polynomial over a base point
  /// in chart coordinates.
  std::vector<Complex> fiber(int chart, Complex x) const;
  /// ζ for chart coordinate x and fiber value w.
  Vec3 zeta(int chart, Complex x, Complex w) const;
  /// Value and derivatives of the chart polynomial P(x, w).
  struct Local {
    Complex p, px, pw, pxx, pxw, pww;
  };
  Local local(int chart, Complex x, Complex w) const;

  /// Points of X with a·z = 0.
  std::vector<Vec3> intersectLine(const Vec3& a) const;
  /// Points of X where the tangent line passes through p (p·∇F = 0).
  std::vector<Vec3> polarPoints(const Vec3& p) const;
  /// Ramification points of the projection (polar points of U e₂).
  std::vector<Vec3> branchPoints() const;

  BasePoint baseOf(const Vec3& z) const;

  /// Fiber point over x with lift derivatives; w is first polished by up to
  /// two guarded Newton steps. Returns the normalized residual |F(z)|/(‖F‖‖z‖^d).
  double lift(int chart, Complex x, Complex w, CurveSample& out) const;

 private:
  using AuxFn = std::function<void(const Vec3& z, Complex& g, Vec3& grad)>;
  std::vector<Vec3> intersect(const AuxFn& g, int auxDegree) const;

  const PlaneCurve* curve_;
  QMatrix u_;
  CMatrix uc_;
  struct Term {
    int ex, ew;
    Complex c;
  };
  std::array<std::vector<Term>, 2> chartTerms_;
};

struct QuadratureGrid {
  int degree = 0;
  int resolution = 0;
  std::uint64_t seed = 0;
  QMatrix coordinateChange;
  kernels::LiftArrays lift;
  kernels::Vec3Array grad;
  std::vector<double> weight, coarseWeight;
  std::vector<std::uint8_t> chart;
  /// Index into `nodes` of the patch each sample belongs to, −1 for the rest region.
  std::vector<int> region;
  std::vector<BaseNode> nodes;
  std::vector<BasePoint> specialPoints;
  /// Base area (in μ) inside the innermost log-polar radius of each patch.
  double excludedArea = 0.0;
  /// Fiber points rejected after polishing (residual above 1e-10).
  std::size_t dropped = 0;
  /// Metric terms of the identity, filled once.
  kernels::MetricArrays base;

  std::size_t size() const { return weight.size(); }
  CurveSample sample(std::size_t i) const;
};

struct GridOptions {
  int resolution = 512;
  std::uint64_t seed = 1;
  /// Group elements whose pulled-back metrics the grid should resolve.
  std::vector<CMatrix> adaptTo;
};

QuadratureGrid buildSampler(const PlaneCurve& curve, const GridOptions& opts);
inline QuadratureGrid buildSampler(const PlaneCurve& curve, int resolution, std::uint64_t seed) {
  return buildSampler(curve, GridOptions{resolution, seed, {}});
}

/// Curve points where σ concentrates its pulled-back metric: X ∩ {v̄ₖ·z = 0}
/// for the top two right singular vectors, and the polar points of v₂, v₁.
std::vector<Vec3> concentrationPoints(const CurveProjection& proj, const CMatrix& sigma);

/// Branch points plus the concentration points of each σ, as distinct base
/// points in a fixed order.
std::vector<BasePoint> specialBasePoints(const CurveProjection& proj, std::span<const CMatrix> adaptTo);

struct Integral {
  double value = 0.0;
  double error = 0.0;  // |fine − coarse|
};

/// Σ wᵢ fᵢ with the fixed reduction order. Throws NumericFailure naming the
/// first non-finite fᵢ with nonzero weight.
Integral integrate(const QuadratureGrid& grid, std::span<const double> density);
Integral integrate(const QuadratureGrid& grid, const std::function<double(const CurveSample&)>& density);

}  // namespace pdual
