#include "pdual/roots.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace pdual {

void hornerWithDerivative(std::span<const Complex> coeffs, Complex x, Complex& p, Complex& dp) {
  p = 0.0;
  dp = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + coeffs[k];
  }
}

namespace {

int effectiveDegree(std::span<const Complex> coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && coeffs[d] == Complex(0.0)) --d;
  return d;
}

// Newton steps that are kept only while |p| decreases; near multiple roots
// roundoff in p can otherwise throw the iterate far away.
void newtonPolish(std::span<const Complex> coeffs, Complex& x, int steps) {
  Complex p, dp;
  hornerWithDerivative(coeffs, x, p, dp);
  for (int i = 0; i < steps; ++i) {
    if (dp == Complex(0.0) || p == Complex(0.0)) return;
    const Complex next = x - p / dp;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) return;
    Complex pn, dpn;
    hornerWithDerivative(coeffs, next, pn, dpn);
    if (std::abs(pn) >= std::abs(p)) return;
    x = next;
    p = pn;
    dp = dpn;
  }
}

}  // namespace

std::vector<Complex> companionRoots(std::span<const Complex> coeffs) {
  const int d = effectiveDegree(coeffs);
  if (d < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[i] / coeffs[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(d);
  for (int i = 0; i < d; ++i) {
    roots[i] = es.eigenvalues()[i];
    newtonPolish(coeffs.first(d + 1), roots[i], 3);
  }
  return roots;
}

bool aberthRefine(std::span<const Complex> coeffs, std::vector<Complex>& roots, int maxIter, double tol) {
  const int d = effectiveDegree(coeffs);
  if (d < 1) {
    roots.clear();
    return true;
  }
  auto c = coeffs.first(d + 1);
  roots.resize(d);
  for (int it = 0; it < maxIter; ++it) {
    double maxStep = 0.0;
    for (int i = 0; i < d; ++i) {
      Complex p, dp;
      hornerWithDerivative(c, roots[i], p, dp);
      if (p == Complex(0.0)) continue;
      const Complex ratio = p / dp;
      Complex sum = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (roots[i] - roots[j]);
      }
      const Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      roots[i] -= w;
      maxStep = std::max(maxStep, std::abs(w) / std::max(1.0, std::abs(roots[i])));
    }
    if (maxStep < tol) return true;
  }
  return false;
}

std::vector<Complex> polyRoots(std::span<const Complex> coeffs) {
  const int d = effectiveDegree(coeffs);
  if (d < 1) return {};
  auto c = coeffs.first(d + 1);
  // Start on a circle of radius given by the Fujiwara-style bound, with an
  // irrational angular offset to avoid symmetric stalls.
  double radius = 0.0;
  for (int k = 0; k < d; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[k] / c[d]), 1.0 / (d - k)));
  }
  radius = std::max(radius, 1e-3);
  std::vector<Complex> roots(d);
  for (int k = 0; k < d; ++k) {
    roots[k] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);
  }
  if (aberthRefine(c, roots, 200)) return roots;
  return companionRoots(c);
}

}  // namespace pdual
