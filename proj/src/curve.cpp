#include "pdual/curve.hpp"

#include <cmath>

namespace pdual {

DenseForm::DenseForm(const CPoly& p) : degree_(p.degree()) {
  if (p.nvars() != 3) throw DimensionError("DenseForm: ternary form expected");
  for (const auto& [m, c] : p.terms()) terms_.push_back({{m[0], m[1], m[2]}, c});
}

namespace {

// pw[k][e] = z_k^e for e ≤ d.
using Powers = std::array<std::array<Complex, 16>, 3>;

void powers(const Vec3& z, int d, Powers& pw) {
  for (int k = 0; k < 3; ++k) {
    pw[k][0] = 1.0;
    for (int e = 1; e <= d; ++e) pw[k][e] = pw[k][e - 1] * z[k];
  }
}

}  // namespace

Complex DenseForm::value(const Vec3& z) const {
  Powers pw;
  powers(z, degree_, pw);
  Complex s = 0.0;
  for (const auto& t : terms_) s += t.c * pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]];
  return s;
}

Vec3 DenseForm::gradient(const Vec3& z) const {
  Powers pw;
  powers(z, degree_, pw);
  Vec3 g{};
  for (const auto& t : terms_) {
    for (int k = 0; k < 3; ++k) {
      if (t.e[k] == 0) continue;
      Complex m = t.c * double(t.e[k]);
      for (int l = 0; l < 3; ++l) m *= pw[l][t.e[l] - (l == k ? 1 : 0)];
      g[k] += m;
    }
  }
  return g;
}

void DenseForm::derivatives(const Vec3& z, Complex& f, Vec3& grad, std::array<Complex, 9>& hess) const {
  Powers pw;
  powers(z, degree_, pw);
  f = 0.0;
  grad = {};
  hess = {};
  for (const auto& t : terms_) {
    f += t.c * pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]];
    for (int k = 0; k < 3; ++k) {
      if (t.e[k] == 0) continue;
      std::array<int, 3> e1 = t.e;
      const double ck = e1[k]--;
      grad[k] += t.c * ck * pw[0][e1[0]] * pw[1][e1[1]] * pw[2][e1[2]];
      for (int l = k; l < 3; ++l) {
        if (e1[l] == 0) continue;
        std::array<int, 3> e2 = e1;
        const double cl = e2[l]--;
        const Complex h = t.c * ck * cl * pw[0][e2[0]] * pw[1][e2[1]] * pw[2][e2[2]];
        hess[3 * k + l] += h;
        if (l != k) hess[3 * l + k] += h;
      }
    }
  }
}

PlaneCurve::PlaneCurve(QPoly poly) : f(std::move(poly)) {
  if (f.nvars() != 3 || f.isZero()) throw DimensionError("PlaneCurve: nonzero ternary form expected");
  if (f.degree() < 1 || f.degree() > 15) throw DimensionError("PlaneCurve: degree out of range");
  fc = toComplex(f);
  form = DenseForm(fc);
  for (const auto& [m, c] : fc.terms()) coeffNormSq += std::norm(c);
}

double normSq(const Vec3& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }

Vec3 matVec(const CMatrix& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
  return r;
}

double bergmanPotential(const CMatrix& sigma, const Vec3& z) {
  return std::log(normSq(matVec(sigma, z))) - std::log(normSq(z));
}

double dualBergmanPotential(const CMatrix& sigma, const Vec3& a) {
  Eigen::FullPivLU<CMatrix> lu(sigma);
  if (!lu.isInvertible()) throw SingularMatrix("dualBergmanPotential: singular σ");
  const CMatrix inv = lu.inverse();
  return std::log(normSq(matVec(inv.transpose(), a))) - std::log(normSq(a));
}

Vec3 gaussMap(const PlaneCurve& curve, const Vec3& z) {
  const Vec3 g = curve.form.gradient(z);
  const double scale = std::sqrt(curve.coeffNormSq) * std::pow(std::sqrt(normSq(z)), curve.degree() - 1);
  if (std::sqrt(normSq(g)) <= 1e-12 * scale) throw NumericFailure("gaussMap: vanishing gradient");
  return g;
}

double psiF(const PlaneCurve& curve, const Vec3& z) {
  return std::log(normSq(gaussMap(curve, z))) - (curve.degree() - 1) * std::log(normSq(z));
}

double fsDensity(const CMatrix& g, const Vec3& z, const Vec3& dz) {
  const Vec3 v = matVec(g, z), dv = matVec(g, dz);
  const double nv = normSq(v);
  const Complex ip = dv[0] * std::conj(v[0]) + dv[1] * std::conj(v[1]) + dv[2] * std::conj(v[2]);
  return (nv * normSq(dv) - std::norm(ip)) / (nv * nv);
}

double fsDensityRatio(const CMatrix& sigma, const Vec3& z, const Vec3& dz) {
  return fsDensity(sigma, z, dz) / fsDensity(CMatrix::Identity(3, 3), z, dz);
}

}  // namespace pdual
