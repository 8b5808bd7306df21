#pragma once

// Energy functionals of Bergman potentials restricted to a plane curve.
//
// Conventions (n = 1, V = ∫_X ω = d, densities against μ = dA/π):
//   φ = log‖σz‖² − log‖z‖²,  u = log(ω_φ/ω),  ψ_F = log‖∇F‖² − (d−1)log‖z‖²
//   J  = (1/2V) ∫ |∂φ|² μ
//   I  = (1/V) ∫ φ (ω − ω_φ)
//   F⁰ = J − (1/V) ∫ φ ω
//   ν  = (1/V) ∫ u ω_φ − (3−d)(I − J) + (1/V) ∫ ψ_F (ω_φ − ω)
//   E₁ = (1/V) [2 ∫ u Ric(ω) + ∫ |∂u|² μ]
//   Ψ  = Ψ_B([σ·F]) − Ψ_B([F]), with Ψ_B([f]) = ∫_{X_f} (ψ_f − log‖f‖²) ω
// Ψ_B([σ·F]) is evaluated on X through σ*ω = ω_φ.

#include <map>
#include <string>
#include <vector>

#include "pdual/quadrature.hpp"

namespace pdual {

struct EnergyValues {
  double J = 0, I = 0, F0 = 0, nu = 0, E1 = 0, psiBar = 0;
  /// Largest propagated two-level error among the values above.
  double gridError = 0;
  struct Errors {
    double J = 0, I = 0, F0 = 0, nu = 0, E1 = 0, psiBar = 0;
  } errors;
  /// ∫ω on the grid (should be d) and ∫u(Ric ω + Ric ω_φ)/V, an independent
  /// evaluation of E₁.
  double volume = 0, E1Symmetric = 0;
  /// log(‖σ·F‖²/‖F‖²) with the Fubini–Study weighted norm.
  double logNormF = 0;
};

/// Requires a grid built for `curve`; σ must be invertible. ν and Ψ assume
/// |det σ| = 1.
EnergyValues energies(const PlaneCurve& curve, const CMatrix& sigma, const QuadratureGrid& grid);

/// log(‖σ·F‖²/‖F‖²) and log(‖σ·Δ‖²/‖Δ‖²) for the point and dual actions.
double logNormRatioPoint(const QPoly& f, const CMatrix& sigma);
double logNormRatioDual(const QPoly& delta, const CMatrix& sigma);

/// ∫ ρ*_F ω̂ over X: the FS density pulled back through the Gauss map
/// (v = ∇F(z), v′ = Hess F(z)·z′). Equals deg X∨ = d(d−1).
Integral dualDegreeCheck(const PlaneCurve& curve, const QuadratureGrid& grid);

/// Random points of X with tangents (weights zero).
std::vector<CurveSample> randomCurvePoints(const PlaneCurve& curve, std::size_t count, std::uint64_t seed);

/// Residual of φ̂_σ(∇F(z)) = 2φ_σ(z) + log(ω_σ/ω)(z) − log|det σ|² at one point.
double ddbarResidual(const PlaneCurve& curve, const CMatrix& sigma, const CurveSample& s);

/// Grids adapted to one group element at a time; a grid is reused while the
/// special points stay the same (e.g. along a diagonal family).
class GridCache {
 public:
  GridCache(const PlaneCurve& curve, int resolution, std::uint64_t seed)
      : curve_(&curve), resolution_(resolution), seed_(seed) {}
  const QuadratureGrid& forSigma(const CMatrix& sigma);
  std::size_t builds() const { return builds_; }

 private:
  const PlaneCurve* curve_;
  int resolution_;
  std::uint64_t seed_;
  QuadratureGrid grid_;
  bool have_ = false;
  std::size_t builds_ = 0;
};

}  // namespace pdual
