#include "pdual/sylvester.hpp"

#include <bit>
#include <cstdint>
#include <optional>

namespace pdual {

int UnivariatePoly::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (!coeffs[k].isZero()) return k;
  }
  return -1;
}

UnivariatePoly UnivariatePoly::derivative() const {
  UnivariatePoly d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d.coeffs.push_back(coeffs[k] * Rational(static_cast<long>(k)));
  }
  return d;
}

namespace {

int ambientVars(const UnivariatePoly& f) {
  if (f.coeffs.empty()) throw DimensionError("sylvesterMatrix: empty polynomial");
  return f.coeffs.front().nvars();
}

}  // namespace

PolyMatrix sylvesterMatrix(const UnivariatePoly& f, const UnivariatePoly& g) {
  const int p = f.degree();
  const int q = g.degree();
  if (p < 1 || q < 1) throw DimensionError("sylvesterMatrix: both degrees must be at least 1");
  const int nv = ambientVars(f);
  if (ambientVars(g) != nv) throw DimensionError("sylvesterMatrix: coefficient rings differ");
  const int n = p + q;
  PolyMatrix m(n, std::vector<QPoly>(n, QPoly(nv, 0, f.coeffs.front().space())));
  for (int r = 0; r < q; ++r)
    for (int k = 0; k <= p; ++k) m[r][r + k] = f.coeffs[p - k];
  for (int r = 0; r < p; ++r)
    for (int k = 0; k <= q; ++k) m[q + r][r + k] = g.coeffs[q - k];
  return m;
}

QPoly fractionFreeDet(const PolyMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw DimensionError("fractionFreeDet: matrix is not square");
  }
  if (n == 0) throw DimensionError("fractionFreeDet: empty matrix");
  if (n > 24) throw CapExceeded("fractionFreeDet: matrix too large for minor expansion");
  const int nv = m[0][0].nvars();
  const Space space = m[0][0].space();

  // minor[S] = det of rows n-|S|..n-1 restricted to the column set S.
  // Built bottom-up by popcount so every term is a product of one entry and
  // a smaller minor; nothing is ever divided.
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  std::vector<std::optional<QPoly>> minor(std::size_t(full) + 1);
  minor[0] = QPoly::constant(nv, Rational(1), space);
  for (int size = 1; size <= n; ++size) {
    const int row = n - size;
    for (std::uint32_t s = 1; s <= full; ++s) {
      if (std::popcount(s) != size) continue;
      if (size == n && s != full) continue;
      QPoly acc(nv, 0, space);
      int pos = 0;  // position of column j within S, for the Laplace sign
      for (int j = 0; j < n; ++j) {
        if (!(s & (1u << j))) continue;
        const QPoly& e = m[row][j];
        const auto& sub = minor[s & ~(1u << j)];
        if (!e.isZero() && sub && !sub->isZero()) {
          QPoly t = e.mul(*sub);
          if (pos % 2) acc -= t; else acc += t;
        }
        ++pos;
      }
      minor[s] = std::move(acc);
    }
    // Only the previous level feeds the next one.
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (std::popcount(s) == size - 1) minor[s].reset();
    }
  }
  return *minor[full];
}

UnivariatePoly toUnivariate(const QPoly& p, int var) {
  const int n = p.nvars();
  if (var < 0 || var >= n || n < 2) throw DimensionError("toUnivariate: bad variable index");
  UnivariatePoly u;
  for (int k = 0; k <= p.degree(); ++k) u.coeffs.emplace_back(n - 1, p.degree() - k, p.space());
  for (const auto& [m, c] : p.terms()) {
    Monomial r(n - 1);
    for (int i = 0, j = 0; i < n; ++i) {
      if (i != var) r[j++] = m[i];
    }
    u.coeffs[m[var]].addTerm(r, c);
  }
  return u;
}

QPoly resultant(const UnivariatePoly& f, const UnivariatePoly& g) {
  return fractionFreeDet(sylvesterMatrix(f, g));
}

}  // namespace pdual
