#pragma once

// Weight polytopes, weights of one-parameter subgroups, slope predictions and
// the exact scaled-inclusion test.
//
// Sign conventions (pinned by the slope-law tests):
//   onDual:   a^α ↦ α    (σ·Δ = Δ∘σᵀ, so λ(t)·Δ scales a^α by t^{⟨α,m⟩})
//   onPoints: z^β ↦ −β   (σ·F = F∘σ⁻¹)
// so log‖λ(t)·v‖² = w_λ(v)·log|t|² + O(1) as t → 0, w_λ = min over N(v) of ⟨x, m⟩.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pdual/linalg.hpp"
#include "pdual/lp.hpp"
#include "pdual/poly.hpp"
#include "pdual/poly_json.hpp"

namespace pdual {

enum class ActionKind { OnPoints, OnDual };
std::string toString(ActionKind k);
ActionKind actionKindFromString(const std::string& s);

using LatticePoint = std::vector<long>;

/// λ(t) = diag(t^{m₀}, …, t^{m_N}); throws InputError unless Σm = 0.
class OneParamSubgroup {
 public:
  explicit OneParamSubgroup(std::vector<long> m);
  const std::vector<long>& exponents() const { return m_; }
  std::size_t dim() const { return m_.size(); }
  /// diag(t^{m_i}) as a complex matrix (dim 3 only).
  CMatrix at(double t) const;

 private:
  std::vector<long> m_;
};

/// Sorted, duplicate-free support weights. `latticeDim` folds variable i onto
/// coordinate i mod latticeDim (0: one coordinate per variable), which is how
/// the resultant in (c₀..c_d, e₀..e_d) sees the torus of P^d.
std::vector<LatticePoint> supportWeights(const QPoly& p, ActionKind kind, int latticeDim = 0);

struct WeightPolytope {
  ActionKind action = ActionKind::OnDual;
  std::vector<LatticePoint> points;
  /// Indices into `points`; each carries a separator proving extremality.
  std::vector<std::size_t> vertices;
  std::vector<HullMembership> vertexCertificates;
  /// Non-vertices, each with a convex combination of the other points.
  std::vector<std::size_t> interior;
  std::vector<HullMembership> interiorCertificates;

  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
  std::vector<LatticePoint> vertexPoints() const;
};

/// Throws InputError on the zero polynomial.
WeightPolytope weightPolytope(const QPoly& p, ActionKind kind, int latticeDim = 0);
WeightPolytope weightPolytope(std::vector<LatticePoint> points, ActionKind kind);
/// Re-checks every certificate exactly.
bool verifyPolytope(const WeightPolytope& w);

/// min over vertices of ⟨x, m⟩. DimensionError on mismatch.
long weightOf(const WeightPolytope& w, const OneParamSubgroup& lambda);
/// Limiting slope of log‖λ(t)v‖² in log|t|² along a sweep: w_λ toward t → 0,
/// −w_{λ⁻¹} toward t → ∞.
long limitWeight(const WeightPolytope& w, const OneParamSubgroup& lambda, bool towardZero);
/// True when |t| decreases along the grid. InputError if not strictly monotone.
bool sweepTowardZero(std::span<const double> tGrid);

/// Subtract the coordinate mean from every point.
std::vector<QPoint> tracelessProjection(const std::vector<LatticePoint>& points);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |value − fit|
  std::vector<double> x, y;  // log|t|², values
};

/// InputError unless the grid is strictly monotone in |t|, geometric, and
/// spans at least three decades of |t|².
void validateSlopeGrid(std::span<const double> tGrid);

/// Least squares of valueAt(t) against log|t|². Throws NumericFailure on a
/// non-finite value and InputError unless the grid is geometric over at
/// least three decades of |t|².
SlopeFit measureSlope(const std::function<double(double)>& valueAt, std::span<const double> tGrid);
SlopeFit fitSlope(std::span<const double> tGrid, std::span<const double> values);

/// log(‖λ(t)·P‖²/‖P‖²) in the FS monomial norm, exactly as a function of t.
double logNormAlong(const QPoly& p, ActionKind kind, const OneParamSubgroup& lambda, double t, int latticeDim = 0);

struct SlopePrediction {
  std::string identity;
  Rational predicted;
  double measured = 0.0;
  double fitResidual = 0.0;
};

/// Predicted slope of 4d·ν − d·E₁ = log‖σΔ‖² − 2(deg Δ/d)·log‖σF‖² + O(1)
/// along λ, in the direction of the sweep. `measured` is left for the caller.
SlopePrediction predictEnergySlope(const QPoly& f, const QPoly& delta, const OneParamSubgroup& lambda,
                                   bool towardZero);

struct VertexInclusion {
  std::size_t vertex = 0;  // index into P.points
  QPoint scaled;           // c·v after projection
  HullMembership membership;  // against Q's projected vertices
};

struct InclusionResult {
  bool included = true;
  Rational c;
  std::vector<QPoint> targetVertices;  // Q's projected vertices, LP column order
  std::vector<VertexInclusion> perVertex;
};

/// Decides c·P ⊆ Q after traceless projection, vertex by vertex.
InclusionResult scaledInclusion(const WeightPolytope& p, const Rational& c, const WeightPolytope& q);
bool verifyInclusion(const InclusionResult& r);
/// Separator of an outside vertex as an integer λ direction (Σm = 0): the
/// destabilizing subgroup along which c·v beats every vertex of Q.
OneParamSubgroup separatorDirection(const HullMembership& m);

Json toJson(const WeightPolytope& w);
Json toJson(const InclusionResult& r);

}  // namespace pdual
