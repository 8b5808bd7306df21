#include "pdual/energy.hpp"

#include <cmath>
#include <random>

#include "pdual/action.hpp"
#include "pdual/roots.hpp"

namespace pdual {

double logNormRatioPoint(const QPoly& f, const CMatrix& sigma) {
  const CPoly fc = toComplex(f);
  return std::log(fsNormSq(pointAction(sigma, fc))) - std::log(fsNormSq(fc));
}

double logNormRatioDual(const QPoly& delta, const CMatrix& sigma) {
  const CPoly dc = toComplex(delta);
  return std::log(fsNormSq(dualAction(sigma, dc))) - std::log(fsNormSq(dc));
}

EnergyValues energies(const PlaneCurve& curve, const CMatrix& sigma, const QuadratureGrid& grid) {
  if (grid.degree != curve.degree()) throw DimensionError("energies: grid was built for another curve");
  if (sigma.rows() != 3 || sigma.cols() != 3) throw DimensionError("energies: σ must be 3×3");
  Eigen::FullPivLU<CMatrix> lu(sigma);
  if (!lu.isInvertible()) throw SingularMatrix("energies: singular σ");

  const auto variant = kernels::defaultVariant();
  const std::size_t n = grid.size();
  const int d = curve.degree();
  const double V = d;
  const kernels::MetricArrays& e = grid.base;
  kernels::MetricArrays s;
  kernels::metricTerms(grid.lift, kernels::GroupData::from(sigma), s, variant);

  // |σ⁻ᵀ ∇F|² for ψ of σ·F at σz.
  const CMatrix invT = lu.inverse().transpose();
  std::array<Complex, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[3 * i + j] = invT(i, j);
  std::vector<double> gradSq, gradSqSigma;
  kernels::transformedNormSq(grid.grad, m, gradSqSigma, variant);
  std::array<Complex, 9> id{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  kernels::transformedNormSq(grid.grad, id, gradSq, variant);

  std::vector<double> phiW(n), phiWs(n), dphi2(n), uWs(n), psiDiff(n), uRic(n), du2(n), uRicSym(n), psiB(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = std::log(s.normSq[i]) - std::log(e.normSq[i]);
    const double u = std::log(s.rho[i]) - std::log(e.rho[i]);
    const double dpRe = s.dLogNormRe[i] - e.dLogNormRe[i], dpIm = s.dLogNormIm[i] - e.dLogNormIm[i];
    const double duRe = s.dLogRhoRe[i] - e.dLogRhoRe[i], duIm = s.dLogRhoIm[i] - e.dLogRhoIm[i];
    const double psi = std::log(gradSq[i]) - (d - 1) * std::log(e.normSq[i]);
    const double psiS = std::log(gradSqSigma[i]) - (d - 1) * std::log(s.normSq[i]);
    phiW[i] = phi * e.rho[i];
    phiWs[i] = phi * s.rho[i];
    dphi2[i] = dpRe * dpRe + dpIm * dpIm;
    uWs[i] = u * s.rho[i];
    psiDiff[i] = psi * (s.rho[i] - e.rho[i]);
    uRic[i] = u * e.ricci[i];
    du2[i] = duRe * duRe + duIm * duIm;
    uRicSym[i] = u * (e.ricci[i] + s.ricci[i]);
    psiB[i] = psiS * s.rho[i] - psi * e.rho[i];
  }
  const Integral vol = integrate(grid, e.rho);
  const Integral aPhi = integrate(grid, phiW), aPhiS = integrate(grid, phiWs), aDphi = integrate(grid, dphi2);
  const Integral aU = integrate(grid, uWs), aPsi = integrate(grid, psiDiff), aURic = integrate(grid, uRic);
  const Integral aDu = integrate(grid, du2), aSym = integrate(grid, uRicSym), aPsiB = integrate(grid, psiB);

  EnergyValues r;
  r.volume = vol.value;
  r.logNormF = logNormRatioPoint(curve.f, sigma);
  r.J = aDphi.value / (2 * V);
  r.I = (aPhi.value - aPhiS.value) / V;
  r.F0 = r.J - aPhi.value / V;
  r.nu = aU.value / V - (3 - d) * (r.I - r.J) + aPsi.value / V;
  r.E1 = (2 * aURic.value + aDu.value) / V;
  r.E1Symmetric = aSym.value / V;
  r.psiBar = aPsiB.value - V * r.logNormF;

  auto& er = r.errors;
  er.J = aDphi.error / (2 * V);
  er.I = (aPhi.error + aPhiS.error) / V;
  er.F0 = er.J + aPhi.error / V;
  er.nu = aU.error / V + std::abs(3 - d) * (er.I + er.J) + aPsi.error / V;
  er.E1 = (2 * aURic.error + aDu.error) / V;
  er.psiBar = aPsiB.error;
  r.gridError = std::max({er.J, er.I, er.F0, er.nu, er.E1, er.psiBar});
  return r;
}

Integral dualDegreeCheck(const PlaneCurve& curve, const QuadratureGrid& grid) {
  if (grid.degree != curve.degree()) throw DimensionError("dualDegreeCheck: grid was built for another curve");
  const CMatrix id = CMatrix::Identity(3, 3);
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const CurveSample s = grid.sample(i);
    Complex f;
    Vec3 grad;
    std::array<Complex, 9> h;
    curve.form.derivatives(s.z, f, grad, h);
    Vec3 dv{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) dv[a] += h[3 * a + b] * s.dz[b];
    rho[i] = fsDensity(id, grad, dv);
  }
  return integrate(grid, rho);
}

std::vector<CurveSample> randomCurvePoints(const PlaneCurve& curve, std::size_t count, std::uint64_t seed) {
  const CurveProjection proj(curve, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CurveSample> out;
  while (out.size() < count) {
    const int chart = u(rng) < 0.5 ? 0 : 1;
    const Complex x = std::polar(std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
    for (const Complex& w : polyRoots(proj.fiber(chart, x))) {
      CurveSample s;
      if (proj.lift(chart, x, w, s) < 1e-10 && out.size() < count) out.push_back(s);
    }
  }
  return out;
}

double ddbarResidual(const PlaneCurve& curve, const CMatrix& sigma, const CurveSample& s) {
  const double lhs = dualBergmanPotential(sigma, gaussMap(curve, s.z));
  const double rhs = 2.0 * bergmanPotential(sigma, s.z) + std::log(fsDensityRatio(sigma, s.z, s.dz)) -
                     std::log(std::norm(sigma.determinant()));
  return std::abs(lhs - rhs);
}

const QuadratureGrid& GridCache::forSigma(const CMatrix& sigma) {
  if (have_) {
    // Same special points ⇒ same grid.
    const CurveProjection proj(*curve_, seed_);
    const std::vector<CMatrix> one{sigma};
    const std::vector<BasePoint> dedup = specialBasePoints(proj, one);
    bool same = dedup.size() == grid_.specialPoints.size();
    for (std::size_t i = 0; same && i < dedup.size(); ++i) same = chordal(dedup[i], grid_.specialPoints[i]) < 1e-12;
    if (same) return grid_;
  }
  grid_ = buildSampler(*curve_, GridOptions{resolution_, seed_, {sigma}});
  have_ = true;
  ++builds_;
  return grid_;
}

}  // namespace pdual
