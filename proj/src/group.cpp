#include "pdual/group.hpp"

#include <cmath>

namespace pdual {

CMatrix oneParamSubgroup(const std::vector<int>& m, Complex t) {
  CMatrix s = CMatrix::Zero(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) s(i, i) = std::pow(t, m[i]);
  return s;
}

CMatrix randomGL3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

namespace {

CMatrix randomUnitary(std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(randomGL3(rng));
  return qr.householderQ() * CMatrix::Identity(3, 3);
}

}  // namespace

CMatrix randomSL3(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // a = r·(cos θ, cos(θ − 2π/3), cos(θ + 2π/3)) sums to zero.
  const double theta = 2.0 * M_PI * u(rng);
  const double r = spread * (1.0 + u(rng)) / std::sqrt(3.0);
  CMatrix d = CMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) d(i, i) = std::exp(r * std::cos(theta - 2.0 * M_PI * i / 3.0));
  CMatrix s = randomUnitary(rng) * d * randomUnitary(rng);
  return s / std::pow(s.determinant(), 1.0 / 3.0);
}

QMatrix randomRationalInvertible(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (;;) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m(i, j) = Rational(num(rng), den(rng));
        m(i, j).canonicalize();
      }
    if (sgn(m.det()) != 0) return m;
  }
}

}  // namespace pdual
