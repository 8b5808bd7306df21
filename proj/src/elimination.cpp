#include "pdual/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pdual/action.hpp"
#include "pdual/cache.hpp"
#include "pdual/roots.hpp"
#include "pdual/sylvester.hpp"

namespace pdual {

namespace {

// Ring Q[a0, a1, a2, s, u] used for the symbolic line substitution.
constexpr int kS = 3;
constexpr int kU = 4;

QPoly lineVar(int i) { return QPoly::variable(5, i, Space::Dual); }

void otherIndices(int k, int& i, int& j) {
  i = (k == 0) ? 1 : 0;
  j = (k == 2) ? 1 : 2;
}

}  // namespace

BinaryForm restrictToLine(const QPoly& f, int chart) {
  if (f.nvars() != 3) throw DimensionError("restrictToLine: plane curves only");
  if (chart < 0 || chart > 2) throw DimensionError("restrictToLine: chart must be 0, 1 or 2");
  const int d = f.degree();
  int i = 0, j = 0;
  otherIndices(chart, i, j);
  std::array<QPoly, 3> z;
  z[i] = lineVar(chart) * lineVar(kS);
  z[j] = lineVar(chart) * lineVar(kU);
  z[chart] = -(lineVar(i) * lineVar(kS) + lineVar(j) * lineVar(kU));

  std::array<std::vector<QPoly>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    powers[v].push_back(QPoly::constant(5, Rational(1), Space::Dual));
    for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * z[v]);
  }
  QPoly g(5, 2 * d, Space::Dual);
  for (const auto& [m, c] : f.terms()) {
    g += powers[0][m[0]] * powers[1][m[1]] * powers[2][m[2]] * c;
  }

  BinaryForm out;
  out.coeffs.assign(d + 1, QPoly(3, d, Space::Dual));
  for (const auto& [m, c] : g.terms()) {
    Monomial am{m[0], m[1], m[2]};
    out.coeffs[m[kU]].addTerm(am, c);
  }
  return out;
}

QPoly binaryDiscriminant(const BinaryForm& g) {
  const int d = g.degree();
  if (d < 2) throw DimensionError("binaryDiscriminant: degree must be at least 2");
  const QPoly& lead = g.coeffs[0];
  if (lead.isZero()) throw InexactDivision("binaryDiscriminant: leading coefficient vanishes");
  UnivariatePoly f;
  for (int k = 0; k <= d; ++k) f.coeffs.push_back(g.coeffs[d - k]);
  return exactDivide(resultant(f, f.derivative()), lead);
}

// ---------------------------------------------------------------------------

namespace {

double coefficientNorm(const CPoly& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<Complex> wCoefficients(const CPoly& p, Complex b0, Complex b1) {
  // p(b0, b1, w) as a polynomial in w, ascending.
  std::vector<Complex> c(p.degree() + 1, Complex(0.0));
  for (const auto& [m, v] : p.terms()) {
    c[m[2]] += v * std::pow(b0, static_cast<int>(m[0])) * std::pow(b1, static_cast<int>(m[1]));
  }
  return c;
}

// Newton on (P0, P1) = 0 in the affine chart where coordinate `fixed` is 1.
void refineCommonZero(const CPoly& p0, const CPoly& p1, std::array<Complex, 3>& x, int fixed) {
  const int a = fixed == 0 ? 1 : 0;
  const int b = fixed == 2 ? 1 : 2;
  std::array<CPoly, 2> ps{p0, p1};
  std::array<std::array<CPoly, 2>, 2> jac;
  for (int r = 0; r < 2; ++r) {
    jac[r][0] = partialDerivative(ps[r], a);
    jac[r][1] = partialDerivative(ps[r], b);
  }
  for (int it = 0; it < 30; ++it) {
    std::span<const Complex> pt(x);
    Complex f0 = evalPoly(ps[0], pt), f1 = evalPoly(ps[1], pt);
    Complex j00 = evalPoly(jac[0][0], pt), j01 = evalPoly(jac[0][1], pt);
    Complex j10 = evalPoly(jac[1][0], pt), j11 = evalPoly(jac[1][1], pt);
    Complex det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-300) return;
    Complex da = (f0 * j11 - f1 * j01) / det;
    Complex db = (j00 * f1 - j10 * f0) / det;
    if (!std::isfinite(std::abs(da)) || !std::isfinite(std::abs(db))) return;
    x[a] -= da;
    x[b] -= db;
    if (std::abs(da) + std::abs(db) < 1e-15 * (1.0 + std::abs(x[a]) + std::abs(x[b]))) return;
  }
}

}  // namespace

SmoothnessCertificate smoothnessCheck(const QPoly& f, std::uint64_t seed) {
  if (f.nvars() != 3) throw DimensionError("smoothnessCheck: plane curves only");
  const int d = f.degree();
  if (d < 2) throw DimensionError("smoothnessCheck: degree must be at least 2");
  SmoothnessCertificate cert;
  cert.method = "exact resultant in z2 of two partials after a random integer coordinate change; numeric common zeros; gradient test";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-5, 5);
  int zeroResultants = 0;
  const int attempts = 6;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // A random integer change of coordinates puts the partials in general
    // position (orthogonal ones would leave e.g. the Fermat conic fixed).
    QMatrix u(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) u(i, j) = entry(rng);
    } while (sgn(u.det()) == 0);
    const QPoly fr = linearSubstitute(f, u);
    const QPoly p0 = partialDerivative(fr, 0), p1 = partialDerivative(fr, 1), p2 = partialDerivative(fr, 2);
    UnivariatePoly u0 = toUnivariate(p0, 2), u1 = toUnivariate(p1, 2);
    if (u0.degree() != d - 1 || u1.degree() != d - 1) continue;
    const QPoly res = resultant(u0, u1);
    cert.coordinateChange = u;
    if (res.isZero()) {
      ++zeroResultants;
      continue;
    }
    // Base points [b0 : b1] of common zeros: roots of the binary form res.
    const int deg = res.degree();
    std::vector<Complex> rc(deg + 1, Complex(0.0));
    for (const auto& [m, c] : res.terms()) rc[m[0]] += c.get_d();
    int top = deg;
    while (top > 0 && std::abs(rc[top]) == 0.0) --top;
    std::vector<std::array<Complex, 2>> bases;
    for (Complex x : polyRoots(std::span<const Complex>(rc.data(), top + 1))) bases.push_back({x, 1.0});
    if (top < deg) bases.push_back({1.0, 0.0});

    const CPoly c0 = toComplex(p0), c1 = toComplex(p1), c2 = toComplex(p2);
    const double norm = coefficientNorm(toComplex(fr));
    const CMatrix uc = toComplex(u);
    double minGrad = std::numeric_limits<double>::infinity();
    bool unmatchedBase = false;
    for (const auto& b : bases) {
      bool matched = false;
      auto wc = wCoefficients(c0, b[0], b[1]);
      for (Complex w : polyRoots(wc)) {
        std::array<Complex, 3> x{b[0], b[1], w};
        // Normalize so the largest coordinate is 1, then polish.
        int big = 0;
        for (int i = 1; i < 3; ++i)
          if (std::abs(x[i]) > std::abs(x[big])) big = i;
        const Complex s = x[big];
        for (auto& v : x) v /= s;
        refineCommonZero(c0, c1, x, big);
        std::span<const Complex> pt(x);
        const double pnorm = std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
        const double scaleAt = norm * std::pow(pnorm, d - 1);
        const double r01 = std::hypot(std::abs(evalPoly(c0, pt)), std::abs(evalPoly(c1, pt))) / scaleAt;
        if (r01 > 1e-6) continue;  // spurious pairing of a base point with the wrong fiber root
        matched = true;
        const double g = std::abs(evalPoly(c2, pt)) / scaleAt;
        minGrad = std::min(minGrad, g);
        if (g < cert.singularThreshold) {
          Eigen::Vector3cd v(x[0], x[1], x[2]);
          Eigen::Vector3cd orig = uc * v;
          cert.singularPoints.push_back({orig[0], orig[1], orig[2]});
        }
      }
      unmatchedBase = unmatchedBase || !matched;
    }
    cert.minGradient = minGrad;
    if (unmatchedBase && minGrad >= cert.singularThreshold) {
      // A root of the resultant without a located common zero: no claim.
      cert.verdict = SmoothVerdict::Inconclusive;
    } else if (minGrad > cert.smoothThreshold) {
      cert.verdict = SmoothVerdict::Smooth;
    } else if (minGrad < cert.singularThreshold) {
      cert.verdict = SmoothVerdict::Singular;
    } else {
      cert.verdict = SmoothVerdict::Inconclusive;
    }
    return cert;
  }
  // For a smooth curve the gradient map is finite, so partials in general
  // position cannot share a component; repeated sharing means singular.
  if (zeroResultants > 0) {
    cert.verdict = SmoothVerdict::Singular;
    cert.minGradient = 0.0;
    cert.method = "partials share a component in every tried coordinate system";
  }
  return cert;
}

// ---------------------------------------------------------------------------

DualDiscriminant planeDualDiscriminant(const QPoly& f, const DualDiscriminantOptions& opts) {
  if (f.nvars() != 3) throw DimensionError("planeDualDiscriminant: plane curves only");
  const int d = f.degree();
  if (d < 2) throw DimensionError("planeDualDiscriminant: degree must be at least 2");
  if (d > kMaxDualDiscriminantDegree) {
    throw CapExceeded("planeDualDiscriminant: degree " + std::to_string(d) + " exceeds the symbolic cap " +
                      std::to_string(kMaxDualDiscriminantDegree));
  }
  if (f.isZero()) throw InputError("planeDualDiscriminant: zero polynomial");
  if (opts.requireSmooth) {
    const auto cert = smoothnessCheck(f);
    if (cert.verdict != SmoothVerdict::Smooth) {
      throw NotSmooth("planeDualDiscriminant: curve is not certified smooth (min gradient " +
                      std::to_string(cert.minGradient) + ")");
    }
  }

  const std::string key = "dual-discriminant/v1/chart" + std::to_string(opts.chart) + "/" +
                          toJson(canonical(f)).dump();
  std::optional<ResultCache> cache;
  if (opts.cacheDir) {
    cache.emplace(*opts.cacheDir);
    if (auto hit = cache->lookup(key)) {
      return DualDiscriminant{*hit, d, opts.chart};
    }
  }

  std::vector<int> charts = opts.chart >= 0 ? std::vector<int>{opts.chart} : std::vector<int>{2, 1, 0};
  for (int chart : charts) {
    QPoly raw;
    try {
      raw = binaryDiscriminant(restrictToLine(f, chart));
    } catch (const InexactDivision&) {
      continue;
    }
    if (raw.isZero()) continue;
    QPoly delta = divideMonomial(raw, monomialContent(raw));
    if (delta.degree() != d * (d - 1)) {
      throw Error("planeDualDiscriminant: extraneous factor is not monomial (degree " +
                  std::to_string(delta.degree()) + ", expected " + std::to_string(d * (d - 1)) + ")");
    }
    delta = canonical(delta);
    if (cache) {
      cache->store(key, delta, Json{{"kind", "dual-discriminant"}, {"d", d}, {"chart", chart}});
    }
    return DualDiscriminant{delta, d, chart};
  }
  throw InexactDivision("planeDualDiscriminant: no chart admits the leading-coefficient division");
}

namespace {

std::optional<ResultCache> openCache(const std::optional<std::filesystem::path>& dir) {
  if (!dir) return std::nullopt;
  return ResultCache(*dir);
}

void checkGenericDegree(int d, int lo) {
  if (d < lo) throw DimensionError("generic eliminant: degree must be at least " + std::to_string(lo));
  if (d > kMaxGenericDegree) {
    throw CapExceeded("generic eliminant: degree " + std::to_string(d) + " exceeds the symbolic cap " +
                      std::to_string(kMaxGenericDegree));
  }
}

}  // namespace

GenericEliminant genericBinaryResultant(int d, const std::optional<std::filesystem::path>& cacheDir) {
  checkGenericDegree(d, 1);
  const std::string key = "generic-resultant/v1/" + std::to_string(d);
  auto cache = openCache(cacheDir);
  if (cache) {
    if (auto hit = cache->lookup(key)) return {*hit, EliminantKind::Resultant, d};
  }
  const int n = 2 * (d + 1);
  UnivariatePoly f, g;
  for (int k = 0; k <= d; ++k) {
    // Σ c_i s^{d−i} u^i at u = 1: the t^k coefficient is c_{d−k}.
    f.coeffs.push_back(QPoly::variable(n, d - k, Space::Dual));
    g.coeffs.push_back(QPoly::variable(n, d + 1 + d - k, Space::Dual));
  }
  QPoly r = canonical(resultant(f, g));
  if (cache) cache->store(key, r, Json{{"kind", "generic-resultant"}, {"d", d}});
  return {r, EliminantKind::Resultant, d};
}

GenericEliminant genericBinaryDiscriminant(int d, const std::optional<std::filesystem::path>& cacheDir) {
  checkGenericDegree(d, 2);
  const std::string key = "generic-discriminant/v1/" + std::to_string(d);
  auto cache = openCache(cacheDir);
  if (cache) {
    if (auto hit = cache->lookup(key)) return {*hit, EliminantKind::Discriminant, d};
  }
  BinaryForm g;
  for (int i = 0; i <= d; ++i) g.coeffs.push_back(QPoly::variable(d + 1, i, Space::Dual));
  QPoly disc = canonical(binaryDiscriminant(g));
  if (cache) cache->store(key, disc, Json{{"kind", "generic-discriminant"}, {"d", d}});
  return {disc, EliminantKind::Discriminant, d};
}

}  // namespace pdual
