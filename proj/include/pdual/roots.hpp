#pragma once

// Univariate complex root finding.

#include <span>
#include <vector>

#include "pdual/poly.hpp"

namespace pdual {

/// Eigenvalues of the companion matrix; coefficients ascending, leading one
/// nonzero. Each root gets a few Newton steps afterwards.
std::vector<Complex> companionRoots(std::span<const Complex> coeffs);

/// Aberth–Ehrlich simultaneous iteration started from `roots` (updated in
/// place). Returns false if it did not reach `tol` in `maxIter` sweeps.
bool aberthRefine(std::span<const Complex> coeffs, std::vector<Complex>& roots,
                  int maxIter = 60, double tol = 1e-14);

/// Aberth from a circle start, companion fallback. Always returns deg roots.
std::vector<Complex> polyRoots(std::span<const Complex> coeffs);

/// p(x) and p'(x) by Horner.
void hornerWithDerivative(std::span<const Complex> coeffs, Complex x, Complex& p, Complex& dp);

}  // namespace pdual
