#include "pdual/lp.hpp"

#include <cstddef>

namespace pdual {

HullMembership convexMembership(const std::vector<QPoint>& points, const QPoint& q) {
  if (points.empty()) throw DimensionError("convexMembership: no points");
  const std::size_t dim = q.size();
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("convexMembership: points of mixed dimension");
  }
  // Rows: coordinates, then Σλ = 1. Columns: λ (n), artificials (m), rhs.
  const std::size_t n = points.size(), m = dim + 1, rhs = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(rhs + 1));
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational b = i < dim ? q[i] : Rational(1);
    if (sgn(b) < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign[i] * (i < dim ? points[j][i] : Rational(1));
    t[i][n + i] = 1;
    t[i][rhs] = sign[i] * b;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  // Reduced costs of min Σ artificials.
  std::vector<Rational> z(rhs + 1);
  for (std::size_t j = 0; j <= rhs; ++j) {
    if (j >= n && j < rhs) continue;
    for (std::size_t i = 0; i < m; ++i) z[j] -= t[i][j];
  }

  for (;;) {
    std::size_t enter = rhs;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (sgn(z[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == rhs) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      const Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase 1 is bounded below by 0, so some row always qualifies.
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = z[enter];
    for (std::size_t j = 0; j <= rhs; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  HullMembership out;
  if (sgn(z[rhs]) == 0) {
    out.inside = true;
    out.lambda.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) out.lambda[basis[i]] = t[i][rhs];
    }
    return out;
  }
  // Duals y_i = 1 − z(artificial i); the Farkas vector is −S y.
  out.h.resize(dim);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational f = -sign[i] * (Rational(1) - z[n + i]);
    if (i < dim) {
      out.h[i] = f;
    } else {
      out.h0 = f;
    }
  }
  return out;
}

bool verifyMembership(const std::vector<QPoint>& points, const QPoint& q, const HullMembership& m) {
  const std::size_t dim = q.size();
  if (m.inside) {
    if (m.lambda.size() != points.size()) return false;
    Rational total;
    QPoint sum(dim);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (sgn(m.lambda[j]) < 0) return false;
      total += m.lambda[j];
      for (std::size_t i = 0; i < dim; ++i) sum[i] += m.lambda[j] * points[j][i];
    }
    return total == 1 && sum == q;
  }
  if (m.h.size() != dim) return false;
  auto eval = [&](const QPoint& p) {
    Rational s = m.h0;
    for (std::size_t i = 0; i < dim; ++i) s += m.h[i] * p[i];
    return s;
  };
  for (const auto& p : points) {
    if (sgn(eval(p)) < 0) return false;
  }
  return sgn(eval(q)) < 0;
}

}  // namespace pdual
