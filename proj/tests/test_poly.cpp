#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pdual/action.hpp"
#include "pdual/poly_json.hpp"
#include "pdual/sylvester.hpp"
#include "test_util.hpp"

using namespace pdual;
using pdual::testing::randomInvertible;
using pdual::testing::randomPoint;
using pdual::testing::randomPoly;

namespace {

QPoly z(int n, int i) { return QPoly::variable(n, i); }
QPoly a(int n, int i) { return QPoly::variable(n, i, Space::Dual); }
Rational q(long p, long r = 1) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

QPoly veronese() { return z(3, 0) * z(3, 2) - z(3, 1) * z(3, 1); }

// Leibniz expansion over all permutations: independent of the Laplace
// memoization inside fractionFreeDet.
QPoly leibnizDet(const PolyMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  QPoly sum(m[0][0].nvars(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    QPoly t = QPoly::constant(m[0][0].nvars(), Rational(inversions % 2 ? -1 : 1));
    for (int i = 0; i < n; ++i) t = t * m[i][perm[i]];
    sum += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

}  // namespace

TEST_CASE("evalPoly examples") {
  QPoly fermat = z(3, 0).pow(2) + z(3, 1).pow(2) + z(3, 2).pow(2);
  std::vector<Rational> e0{1, 0, 0};
  CHECK(evalPoly(fermat, std::span<const Rational>(e0)) == 1);
  std::vector<Rational> ones{1, 1, 1}, twos{2, 2, 2}, x{1, 2, 1};
  CHECK(evalPoly(veronese(), std::span<const Rational>(ones)) == 0);
  CHECK(evalPoly(veronese(), std::span<const Rational>(twos)) == 0);
  CHECK(evalPoly(veronese(), std::span<const Rational>(x)) == -3);
  std::vector<Rational> bad{1, 2};
  CHECK_THROWS_AS(evalPoly(veronese(), std::span<const Rational>(bad)), DimensionError);
}

TEST_CASE("evalPoly homogeneity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    QPoly p = randomPoly(rng, 3, 1 + trial % 4);
    auto x = randomPoint(rng, 3);
    Rational t = q(3, 2);
    std::vector<Rational> tx(x);
    for (auto& v : tx) v *= t;
    Rational td = 1;
    for (int k = 0; k < p.degree(); ++k) td *= t;
    CHECK(evalPoly(p, std::span<const Rational>(tx)) == td * evalPoly(p, std::span<const Rational>(x)));
  }
}

TEST_CASE("ring axioms hold exactly") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    QPoly p = randomPoly(rng, 3, 2), r = randomPoly(rng, 3, 2), s = randomPoly(rng, 3, 1);
    QPoly t = randomPoly(rng, 3, 2);
    CHECK((p * r) * s == p * (r * s));
    CHECK(p * (r + t) == p * r + p * t);
    CHECK(p * r == r * p);
    CHECK((p - p).isZero());
  }
}

TEST_CASE("inhomogeneous terms are rejected") {
  QPoly p = z(3, 0);
  CHECK_THROWS_AS(p.addTerm(Monomial{2, 0, 0}, Rational(1)), DimensionError);
  CHECK_THROWS_AS(p + z(3, 0) * z(3, 1), DimensionError);
}

TEST_CASE("linearSubstitute identity and composition") {
  std::mt19937_64 rng(13);
  QPoly p = randomPoly(rng, 3, 3);
  CHECK(linearSubstitute(p, QMatrix::identity(3)) == p);
  for (int trial = 0; trial < 5; ++trial) {
    QPoly f = randomPoly(rng, 3, 3);
    QMatrix m = randomInvertible(rng, 3), m2 = randomInvertible(rng, 3);
    QPoly lhs = linearSubstitute(linearSubstitute(f, m), m2);
    QPoly rhs = linearSubstitute(f, m * m2);
    CHECK(lhs == rhs);
    // Evaluation oracle: (P∘M)(x) = P(Mx).
    auto x = randomPoint(rng, 3);
    auto mx = pdual::testing::apply(m, x);
    CHECK(evalPoly(linearSubstitute(f, m), std::span<const Rational>(x)) ==
          evalPoly(f, std::span<const Rational>(mx)));
  }
  QMatrix singular{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
  CHECK_THROWS_AS(linearSubstitute(p, singular), SingularMatrix);
}

TEST_CASE("point and dual actions are left actions") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    QPoly f = randomPoly(rng, 3, 2);
    QPoly d = randomPoly(rng, 3, 2, 0.7, Space::Dual);
    QMatrix s = randomInvertible(rng, 3), t = randomInvertible(rng, 3);
    CHECK(pointAction(s, pointAction(t, f)) == pointAction(s * t, f));
    CHECK(dualAction(s, dualAction(t, d)) == dualAction(s * t, d));
  }
}

TEST_CASE("Veronese conic is torus semi-invariant") {
  QMatrix lam = QMatrix::diagonal({q(3), q(1), q(1, 3)});
  QPoly moved = pointAction(lam, veronese());
  // Term-by-term scaling: z0 z2 by t^-1 t = 1 and z1^2 by 1.
  CHECK(moved.coeff(Monomial{1, 0, 1}) == 1);
  CHECK(moved.coeff(Monomial{0, 2, 0}) == -1);
  CHECK(moved == veronese());
}

TEST_CASE("partialDerivative and Euler identity") {
  CHECK(partialDerivative(z(3, 0).pow(2), 0) == z(3, 0) * q(2));
  CHECK(partialDerivative(veronese(), 1) == z(3, 1) * q(-2));
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    QPoly f = randomPoly(rng, 3, 4);
    QPoly euler(3, 4);
    for (int i = 0; i < 3; ++i) euler += z(3, i) * partialDerivative(f, i);
    CHECK(euler == f * Rational(4));
  }
}

TEST_CASE("sylvesterMatrix layout and determinant") {
  QPoly A = z(3, 0), B = z(3, 1), C = z(3, 2);
  UnivariatePoly f{{C, B, A}};
  UnivariatePoly g = f.derivative();
  PolyMatrix s = sylvesterMatrix(f, g);
  REQUIRE(s.size() == 3);
  QPoly zero(3, 1);
  CHECK(s[0] == std::vector<QPoly>{A, B, C});
  CHECK(s[1] == std::vector<QPoly>{A * q(2), B, zero});
  CHECK(s[2] == std::vector<QPoly>{zero, A * q(2), B});
  QPoly expected = -(A * (B * B - A * C * q(4)));
  CHECK(fractionFreeDet(s) == expected);
}

TEST_CASE("resultant vanishes on a shared rational root") {
  // f = (t - 2)(t + 1), g = (t - 2)(3t + 5) with constant coefficients.
  auto c = [](long v) { return QPoly::constant(3, Rational(v)); };
  UnivariatePoly f{{c(-2), c(-1), c(1)}};
  UnivariatePoly g{{c(-10), c(-1), c(3)}};
  CHECK(resultant(f, g).isZero());
  UnivariatePoly h{{c(1), c(0), c(1)}};
  CHECK(!resultant(f, h).isZero());
  CHECK_THROWS_AS(sylvesterMatrix(f, UnivariatePoly{{c(1)}}), DimensionError);
}

TEST_CASE("fractionFreeDet agrees with Leibniz expansion") {
  std::mt19937_64 rng(16);
  const int n = 3;
  for (int size = 1; size <= 4; ++size) {
    for (int trial = 0; trial < 4; ++trial) {
      PolyMatrix m(size, std::vector<QPoly>(size));
      for (auto& row : m)
        for (auto& e : row) e = randomPoly(rng, n, 1, 0.6);
      CHECK(fractionFreeDet(m) == leibnizDet(m));
    }
  }
  PolyMatrix id(3, std::vector<QPoly>(3, QPoly(2, 0)));
  for (int i = 0; i < 3; ++i) id[i][i] = QPoly::constant(2, Rational(1));
  CHECK(fractionFreeDet(id) == QPoly::constant(2, Rational(1)));
  PolyMatrix rep(4, std::vector<QPoly>(4));
  for (auto& row : rep)
    for (auto& e : row) e = randomPoly(rng, 2, 1);
  rep[3] = rep[1];
  CHECK(fractionFreeDet(rep).isZero());
  CHECK_THROWS_AS(fractionFreeDet(PolyMatrix{{z(3, 0), z(3, 1)}}), DimensionError);
}

TEST_CASE("exactDivide") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    QPoly Q = randomPoly(rng, 3, 2), R = randomPoly(rng, 3, 3);
    CHECK(exactDivide(Q * R, Q) == R);
  }
  QPoly p = randomPoly(rng, 3, 3);
  CHECK(exactDivide(p, QPoly::constant(3, Rational(1))) == p);
  QPoly num = z(2, 0).pow(2) + z(2, 1).pow(2);
  CHECK_THROWS_AS(exactDivide(num, z(2, 0) + z(2, 1)), InexactDivision);
}

TEST_CASE("fsNormSq") {
  CHECK(fsNormSq(QPoly(3, 2)) == 0);
  CHECK(fsNormSq(z(3, 0).pow(4)) == q(1, 24));
  QPoly d = a(3, 1).pow(2) - a(3, 0) * a(3, 2) * q(4);
  CHECK(fsNormSq(d) == q(33, 2));
  CHECK(std::abs(fsNormSq(toComplex(d)) - 16.5) < 1e-12);
  // Invariance under permutations of the variables.
  std::mt19937_64 rng(18);
  QMatrix perm{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  for (int trial = 0; trial < 5; ++trial) {
    QPoly f = randomPoly(rng, 3, 3);
    CHECK(fsNormSq(linearSubstitute(f, perm)) == fsNormSq(f));
  }
}

TEST_CASE("canonical normalization") {
  QPoly d = a(3, 1).pow(2) * q(-1, 2) + a(3, 0) * a(3, 2) * q(2);
  QPoly c = canonical(d);
  CHECK(c == a(3, 0) * a(3, 2) * q(4) - a(3, 1).pow(2));
  CHECK(canonical(d * q(-7, 3)) == c);
}

TEST_CASE("polynomial JSON round trip") {
  std::mt19937_64 rng(19);
  QPoly p = randomPoly(rng, 3, 3, 0.7, Space::Dual);
  Json j = toJson(p);
  CHECK(j["space"] == "dual");
  CHECK(qpolyFromJson(j) == p);
  // Readers accept any order.
  Json rev = j;
  std::reverse(rev["terms"].begin(), rev["terms"].end());
  CHECK(qpolyFromJson(rev) == p);
  CHECK(toJson(qpolyFromJson(rev)).dump() == j.dump());
  CPoly cp = toComplex(p);
  CHECK(cpolyFromJson(toJson(cp)) == cp);
  CHECK_THROWS_AS(qpolyFromJson(toJson(cp)), InputError);
  CHECK(parseRational("0.25") == q(1, 4));
  CHECK(parseRational("-3/6") == q(-1, 2));
}
