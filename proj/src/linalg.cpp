#include "pdual/linalg.hpp"

namespace pdual {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  a_.reserve(std::size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionError("QMatrix: ragged rows");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<Rational>& d) {
  const int n = static_cast<int>(d.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("QMatrix: product shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Rational QMatrix::det() const {
  if (rows_ != cols_) throw DimensionError("QMatrix: det of non-square matrix");
  QMatrix m = *this;
  const int n = rows_;
  Rational d = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionError("QMatrix: inverse of non-square matrix");
  const int n = rows_;
  QMatrix m = *this;
  QMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) throw SingularMatrix("QMatrix: matrix is singular");
    if (p != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    Rational piv = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

CMatrix toComplex(const QMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Complex(m(i, j).get_d(), 0.0);
  return r;
}

QMatrix cayleyOrthogonal(const Rational& x, const Rational& y, const Rational& z) {
  QMatrix a{{0, x, y}, {-x, 0, z}, {-y, -z, 0}};
  QMatrix id = QMatrix::identity(3);
  QMatrix minus(3, 3), plus(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      minus(i, j) = id(i, j) - a(i, j);
      plus(i, j) = id(i, j) + a(i, j);
    }
  // I + A is invertible for real skew A (eigenvalues 1 + i·real).
  return minus * plus.inverse();
}

}  // namespace pdual
