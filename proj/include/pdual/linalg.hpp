#pragma once

// Small dense matrices: exact rational (for symbolic actions) and
// complex double (Eigen) for the numeric side.

#include <vector>

#include <Eigen/Dense>

#include "pdual/poly.hpp"

namespace pdual {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(int n);
  static QMatrix diagonal(const std::vector<Rational>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& o) const;
  friend bool operator==(const QMatrix& x, const QMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Rational det() const;
  /// Throws SingularMatrix.
  QMatrix inverse() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

using CMatrix = Eigen::MatrixXcd;

CMatrix toComplex(const QMatrix& m);

/// Rational orthogonal 3×3 matrix (I − A)(I + A)⁻¹ from the skew matrix A
/// with upper entries (x, y, z). Orthogonal over Q, hence unitary.
QMatrix cayleyOrthogonal(const Rational& x, const Rational& y, const Rational& z);

}  // namespace pdual
