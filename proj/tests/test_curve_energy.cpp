#include <doctest.h>

#include <cmath>
#include <map>

#include "pdual/action.hpp"
#include "pdual/elimination.hpp"
#include "pdual/energy.hpp"
#include "pdual/group.hpp"
#include "pdual/roots.hpp"
#include "test_util.hpp"

using namespace pdual;

namespace {

QPoly z(int i) { return QPoly::variable(3, i); }
QPoly fermat(int d) { return z(0).pow(d) + z(1).pow(d) + z(2).pow(d); }
QPoly veronese() { return z(0) * z(2) - z(1).pow(2); }

CMatrix diagT(double t) {
  CMatrix s = CMatrix::Zero(3, 3);
  s(0, 0) = t;
  s(1, 1) = 1.0;
  s(2, 2) = 1.0 / t;
  return s;
}

Vec3 cvec(Complex a, Complex b, Complex c) { return {a, b, c}; }

// 1 − |⟨u, v⟩|²/(|u|²|v|²): zero iff u ∝ v.
double projGap(const Vec3& u, const Vec3& v) {
  Complex ip = 0.0;
  for (int i = 0; i < 3; ++i) ip += std::conj(u[i]) * v[i];
  return std::abs(1.0 - std::norm(ip) / (normSq(u) * normSq(v)));
}

// One grid per (curve, resolution), built on first use.
const QuadratureGrid& identityGrid(const PlaneCurve& c, int res) {
  static std::map<std::pair<std::string, int>, QuadratureGrid> grids;
  const auto key = std::make_pair(formatPoly(c.f), res);
  auto it = grids.find(key);
  if (it == grids.end()) it = grids.emplace(key, buildSampler(c, res, 1)).first;
  return it->second;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("volume, Ricci and dual degree of Fermat curves") {
    for (int d : {2, 3}) {
      CAPTURE(d);
      const PlaneCurve c(fermat(d));
      const QuadratureGrid& g = identityGrid(c, 256);
      CHECK(g.dropped == 0);
      const Integral vol = integrate(g, g.base.rho);
      CHECK(std::abs(vol.value - d) < 0.005 * d);
      CHECK(std::abs(vol.value - d) <= vol.error + 1e-6);
      const Integral ric = integrate(g, g.base.ricci);
      CHECK(std::abs(ric.value - (3 - d) * d) < 0.03 * d);
      const Integral dual = dualDegreeCheck(c, g);
      CHECK(std::abs(dual.value - d * (d - 1)) < 0.01 * d * (d - 1));
    }
  }

  TEST_CASE("quartic volume and Ricci integral") {
    const PlaneCurve c(fermat(4));
    const QuadratureGrid g = buildSampler(c, 128, 1);
    CHECK(std::abs(integrate(g, g.base.rho).value - 4.0) < 0.02);
    CHECK(std::abs(integrate(g, g.base.ricci).value + 4.0) < 0.04);
  }

  TEST_CASE("error estimate decreases under doubling") {
    for (const QPoly& f : {fermat(2), fermat(3), veronese()}) {
      const PlaneCurve c(f);
      const QuadratureGrid& g1 = identityGrid(c, 128);
      const QuadratureGrid& g2 = identityGrid(c, 256);
      const Integral a = integrate(g1, g1.base.rho), b = integrate(g2, g2.base.rho);
      CHECK(b.error < a.error);
      CHECK(std::abs(b.value - c.degree()) < std::abs(a.value - c.degree()) + 1e-9);
    }
  }

  TEST_CASE("samples lie on the curve with tangent lifts") {
    const PlaneCurve c(fermat(3));
    const QuadratureGrid& g = identityGrid(c, 128);
    const double scale = std::sqrt(c.coeffNormSq);
    for (std::size_t i = 0; i < g.size(); i += 97) {
      const CurveSample s = g.sample(i);
      const double nz = std::sqrt(normSq(s.z));
      CHECK(std::abs(c.form.value(s.z)) / (scale * std::pow(nz, 3)) < 1e-10);
      // d/dx F(z(x)) = ∇F·z′ = 0
      Complex t = 0.0;
      for (int k = 0; k < 3; ++k) t += s.grad[k] * s.dz[k];
      CHECK(std::abs(t) / (std::sqrt(normSq(s.grad)) * std::sqrt(normSq(s.dz)) + 1e-300) < 1e-8);
    }
  }

  TEST_CASE("integrate contract") {
    const PlaneCurve c(fermat(2));
    const QuadratureGrid& g = identityGrid(c, 128);
    std::vector<double> zero(g.size(), 0.0);
    const Integral r = integrate(g, zero);
    CHECK(r.value == 0.0);
    CHECK(r.error == 0.0);
    std::vector<double> bad(g.size(), 1.0);
    std::size_t k = 0;
    while (g.weight[k] == 0.0) ++k;
    bad[k] = NAN;
    CHECK_THROWS_AS(integrate(g, bad), NumericFailure);
    std::vector<double> shortv(g.size() - 1, 1.0);
    CHECK_THROWS_AS(integrate(g, shortv), DimensionError);
    CHECK_THROWS_AS(buildSampler(c, 16, 1), InputError);
    // The functional form agrees with the array form.
    const Integral f = integrate(g, [&](const CurveSample& s) { return fsDensity(CMatrix::Identity(3, 3), s.z, s.dz); });
    CHECK(f.value == doctest::Approx(integrate(g, g.base.rho).value).epsilon(1e-12));
  }

  TEST_CASE("grids are deterministic") {
    const PlaneCurve c(fermat(3));
    std::mt19937_64 rng(5);
    const CMatrix s = randomSL3(rng, 3.0);
    const QuadratureGrid a = buildSampler(c, GridOptions{128, 7, {s}});
    const QuadratureGrid b = buildSampler(c, GridOptions{128, 7, {s}});
    REQUIRE(a.size() == b.size());
    CHECK(a.weight == b.weight);
    CHECK(a.lift.z.re[0] == b.lift.z.re[0]);
    const EnergyValues ea = energies(c, s, a), eb = energies(c, s, b);
    CHECK(ea.nu == eb.nu);
    CHECK(ea.E1 == eb.E1);
  }

  TEST_CASE("adapted grids integrate the pulled-back volume") {
    // σX has degree d too, so ∫ω_σ = d for any σ.
    std::mt19937_64 rng(11);
    for (int d : {2, 3}) {
      const PlaneCurve c(fermat(d));
      for (int k = 0; k < 3; ++k) {
        const CMatrix s = randomSL3(rng, 6.0);
        const QuadratureGrid g = buildSampler(c, GridOptions{256, 1, {s}});
        kernels::MetricArrays m;
        kernels::metricTerms(g.lift, kernels::GroupData::from(s), m, kernels::defaultVariant());
        CHECK(std::abs(integrate(g, m.rho).value - d) < 0.005 * d);
        CHECK(std::abs(integrate(g, m.ricci).value - (3 - d) * d) < 0.03 * d);
      }
    }
  }
}

TEST_SUITE("potentials") {
  TEST_CASE("Bergman potential") {
    std::mt19937_64 rng(1);
    const CMatrix id = CMatrix::Identity(3, 3);
    const Vec3 p = cvec({0.3, 1.0}, {-2.0, 0.5}, {1.0, 0.0});
    CHECK(bergmanPotential(id, p) == 0.0);
    CHECK(bergmanPotential(diagT(3.0), cvec(1.0, 0.0, 0.0)) == doctest::Approx(std::log(9.0)));
    for (int k = 0; k < 10; ++k) {
      const CMatrix s = randomGL3(rng), t = randomGL3(rng);
      const double lhs = bergmanPotential(s * t, p);
      const double rhs = bergmanPotential(s, matVec(t, p)) + bergmanPotential(t, p);
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
      Vec3 q = p;
      for (auto& v : q) v *= Complex(-3.0, 2.0);
      CHECK(bergmanPotential(s, q) == doctest::Approx(bergmanPotential(s, p)).epsilon(1e-12));
    }
  }

  TEST_CASE("dual Bergman potential") {
    std::mt19937_64 rng(2);
    const Vec3 a = cvec({1.0, -1.0}, {0.25, 0.0}, {0.0, 2.0});
    CHECK(dualBergmanPotential(CMatrix::Identity(3, 3), a) == 0.0);
    CHECK(dualBergmanPotential(diagT(3.0), cvec(1.0, 0.0, 0.0)) == doctest::Approx(-std::log(9.0)));
    for (int k = 0; k < 10; ++k) {
      const CMatrix s = randomGL3(rng), t = randomGL3(rng);
      // τ·a = τ⁻ᵀa; φ̂_{στ}(a) = φ̂_σ(τ·a) + φ̂_τ(a)
      const Vec3 ta = matVec(t.inverse().transpose(), a);
      const double lhs = dualBergmanPotential(s * t, a);
      const double rhs = dualBergmanPotential(s, ta) + dualBergmanPotential(t, a);
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
    }
    CMatrix sing = CMatrix::Identity(3, 3);
    sing(2, 2) = 0.0;
    CHECK_THROWS_AS(dualBergmanPotential(sing, a), SingularMatrix);
  }

  TEST_CASE("Gauss map") {
    const PlaneCurve conic(fermat(2));
    const Vec3 g = gaussMap(conic, cvec(1.0, Complex(0.0, 1.0), 0.0));
    CHECK(std::abs(g[0] - 2.0) < 1e-14);
    CHECK(std::abs(g[1] - Complex(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(g[2]) < 1e-14);

    for (int d : {2, 3}) {
      const PlaneCurve c(fermat(d));
      const QPoly delta = planeDualDiscriminant(c.f).delta;
      double l1 = 0.0;
      for (const auto& [m, coef] : delta.terms()) l1 += std::abs(coef.get_d());
      for (const CurveSample& s : randomCurvePoints(c, 20, 3)) {
        const Vec3 a = gaussMap(c, s.z);
        const double na = std::sqrt(normSq(a));
        CHECK(std::abs(evalPoly(delta, a)) / (l1 * std::pow(na, delta.degree())) < 1e-9);
      }
    }
  }

  TEST_CASE("Gauss map equivariance") {
    std::mt19937_64 rng(4);
    for (int d : {2, 3}) {
      const PlaneCurve c(fermat(d) + z(0) * z(1).pow(d - 1));
      const QMatrix sq = randomRationalInvertible(rng);
      const CMatrix s = toComplex(sq);
      const PlaneCurve moved(pointAction(sq, c.f));
      const CMatrix invT = s.inverse().transpose();
      for (const CurveSample& p : randomCurvePoints(c, 20, 9)) {
        const Vec3 lhs = gaussMap(moved, matVec(s, p.z));
        const Vec3 rhs = matVec(invT, gaussMap(c, p.z));
        CHECK(projGap(lhs, rhs) < 1e-9);
      }
    }
  }

  TEST_CASE("psi of the Fermat conic") {
    const PlaneCurve c(fermat(2));
    for (const CurveSample& s : randomCurvePoints(c, 10, 5)) {
      CHECK(psiF(c, s.z) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
      Vec3 q = s.z;
      for (auto& v : q) v *= Complex(0.1, 7.0);
      CHECK(psiF(c, q) == doctest::Approx(psiF(c, s.z)).epsilon(1e-12));
    }
    const PlaneCurve cubic(fermat(3));
    for (const CurveSample& s : randomCurvePoints(cubic, 5, 6)) {
      Vec3 q = s.z;
      for (auto& v : q) v *= 4.0;
      CHECK(psiF(cubic, q) == doctest::Approx(psiF(cubic, s.z)).epsilon(1e-12));
    }
  }

  TEST_CASE("density ratio") {
    const PlaneCurve c(fermat(2));
    const CurveProjection proj(c, 1);
    const CMatrix s = diagT(2.5);
    for (const CurveSample& p : randomCurvePoints(c, 10, 8)) {
      CHECK(fsDensityRatio(CMatrix::Identity(3, 3), p.z, p.dz) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(fsDensityRatio(s, p.z, p.dz) > 0.0);
      // z₀ ↔ z₂ maps the conic to itself and conjugates diag(t,1,1/t) to diag(1/t,1,t).
      const Vec3 q{p.z[2], p.z[1], p.z[0]}, dq{p.dz[2], p.dz[1], p.dz[0]};
      CHECK(fsDensityRatio(diagT(1 / 2.5), q, dq) == doctest::Approx(fsDensityRatio(s, p.z, p.dz)).epsilon(1e-12));
    }
    // The same point seen from both charts: (1, x, w) ~ (1/x, 1, w/x).
    int checked = 0;
    for (double ang : {0.3, 1.7, 2.9, 4.4}) {
      const Complex x = std::polar(0.9, ang);
      for (const Complex& w : polyRoots(proj.fiber(0, x))) {
        CurveSample a, b;
        REQUIRE(proj.lift(0, x, w, a) < 1e-10);
        REQUIRE(proj.lift(1, 1.0 / x, w / x, b) < 1e-10);
        CHECK(projGap(a.z, b.z) < 1e-12);
        CHECK(fsDensityRatio(s, a.z, a.dz) == doctest::Approx(fsDensityRatio(s, b.z, b.dz)).epsilon(1e-10));
        ++checked;
      }
    }
    CHECK(checked == 8);
  }

  TEST_CASE("ddbar identity pointwise") {
    std::mt19937_64 rng(10);
    for (int d : {2, 3}) {
      const PlaneCurve c(fermat(d) + z(0) * z(1) * z(2).pow(d - 2));
      const auto pts = randomCurvePoints(c, 100, 12);
      for (const CurveSample& p : pts) CHECK(ddbarResidual(c, CMatrix::Identity(3, 3), p) < 1e-13);
      const CMatrix two = 2.0 * CMatrix::Identity(3, 3);
      for (const CurveSample& p : pts) CHECK(ddbarResidual(c, two, p) < 1e-9);
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const CMatrix s = randomGL3(rng);
        for (const CurveSample& p : pts) worst = std::max(worst, ddbarResidual(c, s, p));
      }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_SUITE("energies") {
  TEST_CASE("identity gives zero energies") {
    const PlaneCurve c(fermat(3));
    const QuadratureGrid& g = identityGrid(c, 128);
    const EnergyValues e = energies(c, CMatrix::Identity(3, 3), g);
    CHECK(e.J == 0.0);
    CHECK(e.I == 0.0);
    CHECK(e.F0 == 0.0);
    CHECK(e.nu == 0.0);
    CHECK(e.E1 == 0.0);
    CHECK(e.psiBar == 0.0);
    CHECK(e.logNormF == 0.0);
  }

  TEST_CASE("n = 1 identity I = 2J and the two E1 forms") {
    std::mt19937_64 rng(21);
    for (int d : {2, 3}) {
      const PlaneCurve c(fermat(d));
      std::vector<CMatrix> sigmas{diagT(10.0), diagT(0.05)};
      for (int k = 0; k < 3; ++k) sigmas.push_back(randomSL3(rng, 5.0));
      for (const CMatrix& s : sigmas) {
        const QuadratureGrid g = buildSampler(c, GridOptions{256, 1, {s}});
        const EnergyValues e = energies(c, s, g);
        CHECK(e.J > 0.0);
        CHECK(std::abs(e.I - 2 * e.J) <= 2 * (e.errors.I + 2 * e.errors.J) + 1e-6);
        CHECK(std::abs(e.E1 - e.E1Symmetric) <= 0.01 * std::abs(e.E1) + 2 * e.errors.E1 + 1e-4);
        CHECK(std::abs(e.volume - d) < 0.005 * d);
      }
    }
  }

  TEST_CASE("grid/curve mismatch and singular sigma") {
    const PlaneCurve c2(fermat(2)), c3(fermat(3));
    const QuadratureGrid& g = identityGrid(c2, 128);
    CHECK_THROWS_AS(energies(c3, CMatrix::Identity(3, 3), g), DimensionError);
    CHECK_THROWS_AS(energies(c2, CMatrix::Zero(3, 3), g), SingularMatrix);
  }

  TEST_CASE("grid cache reuses grids along a diagonal family") {
    const PlaneCurve c(fermat(2));
    GridCache cache(c, 64, 1);
    for (double t : {3.0, 10.0, 30.0}) cache.forSigma(diagT(t));
    CHECK(cache.builds() == 1);
    std::mt19937_64 rng(3);
    cache.forSigma(randomSL3(rng, 2.0));
    CHECK(cache.builds() == 2);
  }
}

TEST_SUITE("group") {
  TEST_CASE("random SL3 spread") {
    std::mt19937_64 rng(8);
    for (double spread : {1.0, 4.0, 8.0}) {
      for (int k = 0; k < 20; ++k) {
        const CMatrix s = randomSL3(rng, spread);
        CHECK(std::abs(s.determinant()) == doctest::Approx(1.0).epsilon(1e-10));
        Eigen::JacobiSVD<CMatrix> svd(s);
        const double range = std::log(svd.singularValues()(0)) - std::log(svd.singularValues()(2));
        CHECK(range >= 0.87 * spread - 1e-9);
        CHECK(range <= 2.0 * spread + 1e-9);
      }
    }
  }

  TEST_CASE("one-parameter subgroups") {
    const CMatrix l = oneParamSubgroup({1, 0, -1}, 2.0);
    CHECK(l.isApprox(diagT(2.0)));
    CHECK(std::abs(oneParamSubgroup({2, -1, -1}, Complex(0.0, 3.0)).determinant() - 1.0) < 1e-12);
  }
}
