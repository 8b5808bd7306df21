#pragma once

// Smooth plane curves as numeric objects, and the pointwise quantities
// attached to them: Bergman potentials, the Gauss map, ψ_F and pulled-back
// Fubini–Study densities.

#include <array>

#include "pdual/linalg.hpp"
#include "pdual/poly.hpp"

namespace pdual {

using Vec3 = std::array<Complex, 3>;

/// Dense evaluator of a ternary form with first and second derivatives.
class DenseForm {
 public:
  DenseForm() = default;
  explicit DenseForm(const CPoly& p);

  int degree() const { return degree_; }
  Complex value(const Vec3& z) const;
  Vec3 gradient(const Vec3& z) const;
  /// Value, gradient and Hessian (row-major) in one pass.
  void derivatives(const Vec3& z, Complex& f, Vec3& grad, std::array<Complex, 9>& hess) const;

 private:
  struct Term {
    std::array<int, 3> e;
    Complex c;
  };
  int degree_ = 0;
  std::vector<Term> terms_;
};

/// A plane curve F = 0 together with its numeric evaluator.
struct PlaneCurve {
  QPoly f;
  CPoly fc;
  DenseForm form;
  /// Σ|c_α|², used to scale residuals.
  double coeffNormSq = 0.0;

  explicit PlaneCurve(QPoly poly);
  int degree() const { return f.degree(); }
};

double normSq(const Vec3& v);
Vec3 matVec(const CMatrix& m, const Vec3& v);

/// φ_σ(z) = log(‖σz‖²/‖z‖²).
double bergmanPotential(const CMatrix& sigma, const Vec3& z);
/// φ̂_σ(a) = log(‖σ⁻ᵀa‖²/‖a‖²). Throws SingularMatrix.
double dualBergmanPotential(const CMatrix& sigma, const Vec3& a);
/// ρ_F(z) = ∇F(z). Throws NumericFailure at a vanishing gradient.
Vec3 gaussMap(const PlaneCurve& curve, const Vec3& z);
/// ψ_F(z) = log(‖∇F(z)‖² / ‖z‖^{2(d−1)}).
double psiF(const PlaneCurve& curve, const Vec3& z);
/// Pullback of the Fubini–Study density along t ↦ [g z(t)]:
/// (‖v‖²‖v′‖² − |⟨v′, v⟩|²)/‖v‖⁴ with v = g z, v′ = g z′.
double fsDensity(const CMatrix& g, const Vec3& z, const Vec3& dz);
/// ω_σ/ω at a curve point with tangent dz.
double fsDensityRatio(const CMatrix& sigma, const Vec3& z, const Vec3& dz);

}  // namespace pdual
