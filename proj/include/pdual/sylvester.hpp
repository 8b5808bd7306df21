#pragma once

// Univariate polynomials with polynomial coefficients, Sylvester matrices
// and division-free determinants.

#include <vector>

#include "pdual/poly.hpp"

namespace pdual {

/// f(t) = Σ coeffs[k] t^k, coefficients in some ambient ring Q[a].
struct UnivariatePoly {
  std::vector<QPoly> coeffs;  // ascending powers of t

  int degree() const;  // -1 for the zero polynomial
  UnivariatePoly derivative() const;
};

using PolyMatrix = std::vector<std::vector<QPoly>>;

/// (p+q)×(p+q) Sylvester matrix, rows in descending powers of t:
/// q shifted copies of f followed by p shifted copies of g.
PolyMatrix sylvesterMatrix(const UnivariatePoly& f, const UnivariatePoly& g);

/// Exact determinant by memoized Laplace expansion along rows (no division,
/// so entries stay polynomial). Throws DimensionError for non-square input.
QPoly fractionFreeDet(const PolyMatrix& m);

/// Views P as a polynomial in variable `var` whose coefficients live in the
/// remaining nvars−1 variables (order preserved).
UnivariatePoly toUnivariate(const QPoly& p, int var);

/// det(sylvesterMatrix(f, g)).
QPoly resultant(const UnivariatePoly& f, const UnivariatePoly& g);

}  // namespace pdual
