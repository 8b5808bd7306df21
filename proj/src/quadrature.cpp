#include "pdual/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "parallel.hpp"
#include "pdual/action.hpp"
#include "pdual/roots.hpp"

namespace pdual {

namespace {

constexpr double kPi = std::numbers::pi;

// Partition-of-unity shape: η = 1 on the core (chordal ≤ a·R), 0 beyond R.
constexpr double kCore = 0.45;
constexpr double kLeafRadius = 0.3;
// A leaf's radius stays below kGap times the distance to the nearest other
// special point.
constexpr double kGap = 0.35;
constexpr double kMaxRadius = 1.0;
// Log-polar patches cover this many e-folds below their outer radius.
constexpr double kLogSpan = 16.0;
constexpr double kResidualTol = 1e-10;

double smoothStep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double bump(double dist, double radius) {
  return 1.0 - smoothStep((dist / radius - kCore) / (1.0 - kCore));
}

BasePoint normalized(Complex a, Complex b) {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

BasePoint fromChart(int chart, Complex x) {
  return chart == 0 ? normalized(1.0, x) : normalized(x, 1.0);
}

int chartOf(const BasePoint& b) { return std::abs(b[0]) >= std::abs(b[1]) ? 0 : 1; }

Complex chartCoord(const BasePoint& b) { return chartOf(b) == 0 ? b[1] / b[0] : b[0] / b[1]; }

// Riemann-sphere coordinates of a base point and back; used for cluster centres.
std::array<double, 3> toSphere(const BasePoint& b) {
  const Complex p = std::conj(b[0]) * b[1];
  return {2.0 * p.real(), 2.0 * p.imag(), std::norm(b[0]) - std::norm(b[1])};
}

BasePoint fromSphere(std::array<double, 3> s) {
  const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  for (double& v : s) v /= n;
  const double ch = std::sqrt(std::max(0.0, (1.0 + s[2]) / 2.0));
  const double sh = std::sqrt(std::max(0.0, (1.0 - s[2]) / 2.0));
  const double phi = std::atan2(s[1], s[0]);
  return {Complex(ch), std::polar(sh, phi)};
}

// Projective distance of two nonzero lifts.
double projectiveDistance(const Vec3& a, const Vec3& b) {
  Complex ip = 0.0;
  for (int i = 0; i < 3; ++i) ip += std::conj(a[i]) * b[i];
  const double c = std::norm(ip) / (normSq(a) * normSq(b));
  return std::sqrt(std::max(0.0, 1.0 - c));
}

Rational randomRational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

double chordal(const BasePoint& a, const BasePoint& b) {
  return 2.0 * std::abs(a[0] * b[1] - a[1] * b[0]);
}

// ---------------------------------------------------------------------------
// CurveProjection

CurveProjection::CurveProjection(const PlaneCurve& curve, std::uint64_t seed) : curve_(&curve) {
  const int d = curve.degree();
  std::mt19937_64 rng(seed);
  Monomial top(3);
  top[2] = static_cast<std::uint8_t>(d);
  double bestRatio = 0.0;
  QPoly best;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const Rational x = randomRational(rng), y = randomRational(rng), z = randomRational(rng);
    const QMatrix u = cayleyOrthogonal(x, y, z);
    QPoly fp = linearSubstitute(curve.f, u);
    const CPoly fc = toComplex(fp);
    double norm2 = 0.0;
    for (const auto& [m, c] : fc.terms()) norm2 += std::norm(c);
    const double ratio = std::abs(fc.coeff(top)) / std::sqrt(norm2);
    if (ratio > bestRatio) {
      bestRatio = ratio;
      best = std::move(fp);
      u_ = u;
    }
    if (ratio >= 0.05) break;
  }
  if (bestRatio == 0.0) throw NumericFailure("buildSampler: projection degenerate after 10 coordinate changes");
  uc_ = toComplex(u_);
  const CPoly bestC = toComplex(best);
  for (const auto& [m, c] : bestC.terms()) {
    chartTerms_[0].push_back({m[1], m[2], c});
    chartTerms_[1].push_back({m[0], m[2], c});
  }
}

std::vector<Complex> CurveProjection::fiber(int chart, Complex x) const {
  const int d = curve_->degree();
  std::vector<Complex> coeffs(d + 1, 0.0);
  std::array<Complex, 16> pw;
  pw[0] = 1.0;
  for (int e = 1; e <= d; ++e) pw[e] = pw[e - 1] * x;
  for (const auto& t : chartTerms_[chart]) coeffs[t.ew] += t.c * pw[t.ex];
  return coeffs;
}

Vec3 CurveProjection::zeta(int chart, Complex x, Complex w) const {
  return chart == 0 ? Vec3{1.0, x, w} : Vec3{x, 1.0, w};
}

CurveProjection::Local CurveProjection::local(int chart, Complex x, Complex w) const {
  const int d = curve_->degree();
  std::array<Complex, 16> px, pw;
  px[0] = pw[0] = 1.0;
  for (int e = 1; e <= d; ++e) {
    px[e] = px[e - 1] * x;
    pw[e] = pw[e - 1] * w;
  }
  Local r{};
  for (const auto& t : chartTerms_[chart]) {
    const int a = t.ex, b = t.ew;
    r.p += t.c * px[a] * pw[b];
    if (a > 0) r.px += t.c * double(a) * px[a - 1] * pw[b];
    if (b > 0) r.pw += t.c * double(b) * px[a] * pw[b - 1];
    if (a > 1) r.pxx += t.c * double(a * (a - 1)) * px[a - 2] * pw[b];
    if (a > 0 && b > 0) r.pxw += t.c * double(a * b) * px[a - 1] * pw[b - 1];
    if (b > 1) r.pww += t.c * double(b * (b - 1)) * px[a] * pw[b - 2];
  }
  return r;
}

BasePoint CurveProjection::baseOf(const Vec3& z) const {
  // U is orthogonal, so ζ = Uᵀ z.
  Complex c0 = 0.0, c1 = 0.0;
  for (int i = 0; i < 3; ++i) {
    c0 += uc_(i, 0) * z[i];
    c1 += uc_(i, 1) * z[i];
  }
  return normalized(c0, c1);
}

double CurveProjection::lift(int chart, Complex x, Complex w, CurveSample& out) const {
  auto loc = local(chart, x, w);
  for (int it = 0; it < 2 && loc.pw != Complex(0.0); ++it) {
    const Complex wn = w - loc.p / loc.pw;
    const auto ln = local(chart, x, wn);
    if (!(std::abs(ln.p) < std::abs(loc.p))) break;
    w = wn;
    loc = ln;
  }
  // Implicit differentiation of P(x, w(x)) = 0.
  const Complex w1 = -loc.px / loc.pw;
  const Complex w2 = -(loc.pxx + 2.0 * loc.pxw * w1 + loc.pww * w1 * w1) / loc.pw;
  const Vec3 dzeta = chart == 0 ? Vec3{0.0, 1.0, w1} : Vec3{1.0, 0.0, w1};
  out.z = matVec(uc_, zeta(chart, x, w));
  out.dz = matVec(uc_, dzeta);
  out.d2z = matVec(uc_, Vec3{0.0, 0.0, w2});
  out.grad = curve_->form.gradient(out.z);
  out.chart = chart;
  const double zn = std::sqrt(normSq(out.z));
  return std::abs(curve_->form.value(out.z)) / (std::sqrt(curve_->coeffNormSq) * std::pow(zn, curve_->degree()));
}

std::vector<Vec3> CurveProjection::intersect(const AuxFn& g, int auxDegree) const {
  const int d = curve_->degree();
  const int deg = d * auxDegree;
  const int samples = 4 * (deg + 1);
  std::vector<Vec3> found;
  auto gAt = [&](int chart, Complex x, Complex w, Complex& val, Complex& gx, Complex& gw) {
    const Vec3 z = matVec(uc_, zeta(chart, x, w));
    Vec3 grad;
    g(z, val, grad);
    // ∂ζ/∂x is e₁ (chart 0) or e₀ (chart 1); ∂ζ/∂w is e₂.
    const int cx = chart == 0 ? 1 : 0;
    gx = gw = 0.0;
    for (int i = 0; i < 3; ++i) {
      gx += grad[i] * uc_(i, cx);
      gw += grad[i] * uc_(i, 2);
    }
  };
  for (int chart = 0; chart < 2; ++chart) {
    // h(x) = Π_j G(ζ(x, w_j(x))) is a polynomial of degree ≤ d·e in x;
    // recover it from its values on the unit circle.
    std::vector<Complex> h(samples);
    for (int m = 0; m < samples; ++m) {
      const Complex x = std::polar(1.0, 2.0 * kPi * m / samples);
      Complex prod = 1.0;
      for (const Complex& w : polyRoots(fiber(chart, x))) {
        Complex val, gx, gw;
        gAt(chart, x, w, val, gx, gw);
        prod *= val;
      }
      h[m] = prod;
    }
    std::vector<Complex> coeffs(deg + 1);
    double maxAbs = 0.0;
    for (int k = 0; k <= deg; ++k) {
      Complex s = 0.0;
      for (int m = 0; m < samples; ++m) s += h[m] * std::polar(1.0, -2.0 * kPi * double(m) * k / samples);
      coeffs[k] = s / double(samples);
      maxAbs = std::max(maxAbs, std::abs(coeffs[k]));
    }
    if (maxAbs == 0.0) throw NumericFailure("intersect: curves share a component");
    int top = deg;
    while (top > 0 && std::abs(coeffs[top]) < 1e-11 * maxAbs) --top;
    coeffs.resize(top + 1);
    for (Complex x : polyRoots(coeffs)) {
      if (std::abs(x) > 1.05) continue;
      // Fiber point where G is smallest, then Newton on (P, G) in (x, w).
      Complex w = 0.0;
      double bestG = INFINITY;
      for (const Complex& wj : polyRoots(fiber(chart, x))) {
        Complex val, gx, gw;
        gAt(chart, x, wj, val, gx, gw);
        if (std::abs(val) < bestG) {
          bestG = std::abs(val);
          w = wj;
        }
      }
      auto residual = [&](Complex xx, Complex ww, Local& loc, Complex& gv, Complex& gx, Complex& gw) {
        loc = local(chart, xx, ww);
        gAt(chart, xx, ww, gv, gx, gw);
        const double scale = 1.0 + std::norm(xx) + std::norm(ww);
        return std::abs(loc.p) / std::pow(scale, 0.5 * d) + std::abs(gv) / std::pow(scale, 0.5 * auxDegree);
      };
      Local loc;
      Complex gv, gx, gw;
      double res = residual(x, w, loc, gv, gx, gw);
      for (int it = 0; it < 40 && res > 0.0; ++it) {
        const Complex det = loc.px * gw - loc.pw * gx;
        if (det == Complex(0.0)) break;
        const Complex dx = (loc.p * gw - loc.pw * gv) / det;
        const Complex dw = (loc.px * gv - loc.p * gx) / det;
        Local loc2;
        Complex gv2, gx2, gw2;
        const double res2 = residual(x - dx, w - dw, loc2, gv2, gx2, gw2);
        if (!(res2 < res)) break;
        x -= dx;
        w -= dw;
        res = res2;
        loc = loc2;
        gv = gv2;
        gx = gx2;
        gw = gw2;
      }
      const Vec3 z = matVec(uc_, zeta(chart, x, w));
      const bool dup = std::any_of(found.begin(), found.end(),
                                   [&](const Vec3& q) { return projectiveDistance(q, z) < 1e-7; });
      if (!dup) found.push_back(z);
    }
  }
  for (Vec3& z : found) {
    const double n = std::sqrt(normSq(z));
    for (Complex& c : z) c /= n;
  }
  return found;
}

std::vector<Vec3> CurveProjection::intersectLine(const Vec3& a) const {
  return intersect(
      [a](const Vec3& z, Complex& g, Vec3& grad) {
        g = a[0] * z[0] + a[1] * z[1] + a[2] * z[2];
        grad = a;
      },
      1);
}

std::vector<Vec3> CurveProjection::polarPoints(const Vec3& p) const {
  const DenseForm& form = curve_->form;
  return intersect(
      [&form, p](const Vec3& z, Complex& g, Vec3& grad) {
        Complex f;
        Vec3 df;
        std::array<Complex, 9> h;
        form.derivatives(z, f, df, h);
        g = p[0] * df[0] + p[1] * df[1] + p[2] * df[2];
        for (int i = 0; i < 3; ++i) grad[i] = h[3 * i] * p[0] + h[3 * i + 1] * p[1] + h[3 * i + 2] * p[2];
      },
      curve_->degree() - 1);
}

std::vector<Vec3> CurveProjection::branchPoints() const {
  return polarPoints({uc_(0, 2), uc_(1, 2), uc_(2, 2)});
}

std::vector<Vec3> concentrationPoints(const CurveProjection& proj, const CMatrix& sigma) {
  Eigen::JacobiSVD<CMatrix> svd(sigma, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(2) <= 0.0) throw SingularMatrix("concentrationPoints: singular σ");
  if (s(0) / s(2) < 1.0 + 1e-9) return {};
  const CMatrix& v = svd.matrixV();
  std::vector<Vec3> pts;
  auto add = [&pts](const std::vector<Vec3>& more) { pts.insert(pts.end(), more.begin(), more.end()); };
  for (int k = 0; k < 2; ++k) add(proj.intersectLine({std::conj(v(0, k)), std::conj(v(1, k)), std::conj(v(2, k))}));
  for (int k = 2; k >= 1; --k) add(proj.polarPoints({v(0, k), v(1, k), v(2, k)}));
  return pts;
}

std::vector<BasePoint> specialBasePoints(const CurveProjection& proj, std::span<const CMatrix> adaptTo) {
  std::vector<Vec3> special = proj.branchPoints();
  for (const CMatrix& s : adaptTo) {
    const auto more = concentrationPoints(proj, s);
    special.insert(special.end(), more.begin(), more.end());
  }
  std::vector<BasePoint> out;
  for (const Vec3& z : special) {
    const BasePoint b = proj.baseOf(z);
    // Tangential intersections come back as pairs ~√ε apart; one patch
    // spanning 16 e-folds covers both.
    if (std::none_of(out.begin(), out.end(), [&](const BasePoint& q) { return chordal(q, b) < 1e-6; })) {
      out.push_back(b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partition of unity

namespace {

// One leaf per special point, with radius below kGap times its nearest
// neighbour distance so leaf disks are disjoint, plus one patch per cluster
// of the single-linkage dendrogram that fits under kMaxRadius, covering its
// members' leaves with its core. The sequential weights need no nesting: a
// patch's weight vanishes on the core of every finer patch, so gaps between
// close points are resolved by the cluster patch around them.
std::vector<BaseNode> buildNodes(const std::vector<BasePoint>& points) {
  const std::size_t m = points.size();
  std::vector<BaseNode> out;
  for (std::size_t i = 0; i < m; ++i) {
    double nn = INFINITY;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) nn = std::min(nn, chordal(points[i], points[j]));
    }
    out.push_back({points[i], std::min(kLeafRadius, kGap * nn), true});
  }

  std::vector<std::vector<int>> active;
  for (std::size_t i = 0; i < m; ++i) active.push_back({static_cast<int>(i)});
  while (active.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double bd = INFINITY;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        for (int p : active[i]) {
          for (int q : active[j]) {
            const double dist = chordal(points[p], points[q]);
            if (dist < bd) {
              bd = dist;
              bi = i;
              bj = j;
            }
          }
        }
      }
    }
    active[bi].insert(active[bi].end(), active[bj].begin(), active[bj].end());
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));

    std::array<double, 3> sum{};
    for (int p : active[bi]) {
      const auto v = toSphere(points[p]);
      for (int k = 0; k < 3; ++k) sum[k] += v[k];
    }
    const BasePoint center = fromSphere(sum);
    double need = 0.0, outside = INFINITY;
    for (int p : active[bi]) {
      need = std::max(need, (chordal(center, points[p]) + out[p].radius) / kCore);
      for (std::size_t q = 0; q < m; ++q) {
        if (std::find(active[bi].begin(), active[bi].end(), static_cast<int>(q)) == active[bi].end()) {
          outside = std::min(outside, chordal(points[p], points[q]));
        }
      }
    }
    // Reach out toward the neighbours like a leaf does, so the scales between
    // this cluster and the next one up are covered by a centred patch.
    const double radius = std::max(need, std::min(kLeafRadius, kGap * outside));
    if (radius <= kMaxRadius) out.push_back({center, radius, false});
  }
  std::stable_sort(out.begin(), out.end(), [](const BaseNode& a, const BaseNode& b) { return a.radius < b.radius; });
  return out;
}

// Clenshaw–Curtis weights on [−1, 1] at cos(kπ/n), n even.
std::vector<double> clenshawCurtis(int n) {
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double b = (2 * j == n) ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * kPi / n);
    }
    const double c = (k == 0 || k == n) ? 1.0 : 2.0;
    w[k] = c / n * (1.0 - s);
  }
  return w;
}

struct SampleRec {
  Vec3 z, dz, d2z, grad;
  double w, wc;
  std::uint8_t chart;
};

struct Line {
  std::vector<SampleRec> recs;
  int region = -1;
  std::size_t dropped = 0;
};

// Base point on a radial line with its two weights.
struct BaseNodePt {
  Complex x;
  double w, wc;
};

class FiberWalker {
 public:
  FiberWalker(const CurveProjection& proj, int chart) : proj_(proj), chart_(chart) {}

  bool solve(Complex x) {
    const auto coeffs = proj_.fiber(chart_, x);
    const int d = static_cast<int>(coeffs.size()) - 1;
    bool ok = false;
    if (static_cast<int>(roots_.size()) == d) ok = aberthRefine(coeffs, roots_, 40, 1e-14) && vieta(coeffs);
    if (!ok) {
      roots_ = polyRoots(coeffs);
      ok = static_cast<int>(roots_.size()) == d && vieta(coeffs);
    }
    if (!ok) {
      roots_ = companionRoots(coeffs);
      ok = static_cast<int>(roots_.size()) == d;
    }
    return ok;
  }

  const std::vector<Complex>& roots() const { return roots_; }

 private:
  // First two elementary symmetric functions against the coefficients;
  // catches two iterates converging to the same root.
  bool vieta(const std::vector<Complex>& c) const {
    const int d = static_cast<int>(c.size()) - 1;
    Complex e1 = 0.0, e2 = 0.0;
    double scale = 1.0;
    for (const Complex& r : roots_) {
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
      e2 += e1 * r;
      e1 += r;
      scale = std::max(scale, std::abs(r));
    }
    const double tol = 1e-8 * scale * scale;
    if (std::abs(e1 + c[d - 1] / c[d]) > tol * d) return false;
    if (d >= 2 && std::abs(e2 - c[d - 2] / c[d]) > tol * d * d) return false;
    return true;
  }

  const CurveProjection& proj_;
  int chart_;
  std::vector<Complex> roots_;
};

void emitFiber(const CurveProjection& proj, const PlaneCurve& curve, int chart, const BaseNodePt& pt,
               FiberWalker& walker, Line& line) {
  const int d = curve.degree();
  if (!walker.solve(pt.x)) {
    line.dropped += d;
    return;
  }
  for (Complex w : walker.roots()) {
    CurveSample cs;
    const double res = proj.lift(chart, pt.x, w, cs);
    bool finite = std::isfinite(res);
    for (int i = 0; i < 3 && finite; ++i) {
      finite = std::isfinite(std::abs(cs.dz[i])) && std::isfinite(std::abs(cs.d2z[i]));
    }
    if (!finite || res > kResidualTol) {
      ++line.dropped;
      continue;
    }
    SampleRec r;
    r.z = cs.z;
    r.dz = cs.dz;
    r.d2z = cs.d2z;
    r.grad = cs.grad;
    r.w = pt.w;
    r.wc = pt.wc;
    r.chart = static_cast<std::uint8_t>(chart);
    line.recs.push_back(r);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampler

CurveSample QuadratureGrid::sample(std::size_t i) const {
  CurveSample s;
  s.z = lift.z.get(i);
  s.dz = lift.dz.get(i);
  s.d2z = lift.d2z.get(i);
  s.grad = grad.get(i);
  s.weight = weight[i];
  s.coarseWeight = coarseWeight[i];
  s.chart = chart[i];
  return s;
}

QuadratureGrid buildSampler(const PlaneCurve& curve, const GridOptions& opts) {
  if (opts.resolution < 32) throw InputError("buildSampler: resolution must be at least 32");
  const CurveProjection proj(curve, opts.seed);

  const std::vector<BasePoint> basePts = specialBasePoints(proj, opts.adaptTo);
  const std::vector<BaseNode> nodes = buildNodes(basePts);

  const int n = opts.resolution;
  // Patches are resolved radially (log r) much more finely than in angle:
  // their integrands are nearly rotation-invariant around the center.
  const int restR = std::max(8, n / 4) & ~1;
  const int restT = std::max(16, n / 2) & ~1;
  const int nodeS = std::max(16, n / 2) & ~1;
  const int nodeT = std::max(16, n / 16) & ~1;
  // Cluster patches also see the edges of the finer patches inside them.
  const int clusterT = std::max(32, n / 4) & ~1;
  const auto cc = clenshawCurtis(restR);
  const auto ccCoarse = clenshawCurtis(restR / 2);

  // Σ_k η_k Π_{j<k}(1 − η_j) + Π_j(1 − η_j) = 1.
  auto restWeight = [&](const BasePoint& b) {
    double w = 1.0;
    for (const BaseNode& nd : nodes) w *= 1.0 - bump(chordal(b, nd.center), nd.radius);
    return w;
  };
  auto nodeWeight = [&](std::size_t k, const BasePoint& b) {
    double w = bump(chordal(b, nodes[k].center), nodes[k].radius);
    for (std::size_t j = 0; j < k && w != 0.0; ++j) w *= 1.0 - bump(chordal(b, nodes[j].center), nodes[j].radius);
    return w;
  };

  // Outer radius of each patch in its chart coordinate.
  struct Patch {
    int chart;
    Complex c;
    double rmax;
  };
  std::vector<Patch> patches(nodes.size());
  double excluded = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int chart = chartOf(nodes[i].center);
    const Complex c = chartCoord(nodes[i].center);
    double r = 0.5 * nodes[i].radius * (1.0 + std::norm(c));
    for (;;) {
      bool outside = true;
      for (int k = 0; k < 64 && outside; ++k) {
        const BasePoint b = fromChart(chart, c + std::polar(r, 2.0 * kPi * k / 64));
        outside = chordal(b, nodes[i].center) >= nodes[i].radius;
      }
      if (outside) break;
      r *= 1.25;
      if (r > 1e6) throw NumericFailure("buildSampler: patch radius search diverged");
    }
    patches[i] = {chart, c, r};
    const double rmin = r * std::exp(-kLogSpan);
    excluded += rmin * rmin;
  }

  // One radial line per (region, angle), walked outside-in with warm starts.
  struct LineSpec {
    int node;  // −1 for the rest region
    int chart;
    int j;
  };
  std::vector<LineSpec> specs;
  for (int chart = 0; chart < 2; ++chart) {
    for (int j = 0; j < restT; ++j) specs.push_back({-1, chart, j});
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int nt = nodes[i].leaf ? nodeT : clusterT;
    for (int j = 0; j < nt; ++j) specs.push_back({static_cast<int>(i), patches[i].chart, j});
  }

  std::vector<Line> lines(specs.size());
  detail::parallelFor(specs.size(), [&](std::size_t li) {
    const LineSpec& sp = specs[li];
    FiberWalker walker(proj, sp.chart);
    Line& line = lines[li];
    line.region = sp.node;
    if (sp.node < 0) {
      const double theta = 2.0 * kPi * sp.j / restT + 0.1 + 0.2 * sp.chart;
      const Complex dir = std::polar(1.0, theta);
      for (int k = 0; k <= restR; ++k) {
        const double r = 0.5 * (1.0 + std::cos(k * kPi / restR));
        if (r == 0.0) continue;
        const Complex x = r * dir;
        const double pw = restWeight(fromChart(sp.chart, x));
        if (pw == 0.0) continue;
        const double w = pw * cc[k] * r / restT;
        const double wc = (k % 2 == 0 && sp.j % 2 == 0) ? pw * ccCoarse[k / 2] * r / (restT / 2) : 0.0;
        emitFiber(proj, curve, sp.chart, {x, w, wc}, walker, line);
      }
    } else {
      const Patch& p = patches[sp.node];
      const int nt = nodes[sp.node].leaf ? nodeT : clusterT;
      const double theta = 2.0 * kPi * sp.j / nt + 0.3;
      const Complex dir = std::polar(1.0, theta);
      const double h = kLogSpan / nodeS;
      for (int k = 1; k <= nodeS; ++k) {
        const double r = p.rmax * std::exp(-k * h);
        const Complex x = p.c + r * dir;
        const double pw = nodeWeight(static_cast<std::size_t>(sp.node), fromChart(p.chart, x));
        if (pw == 0.0) continue;
        const double end = (k == nodeS) ? 0.5 : 1.0;
        const double w = pw * end * h * r * r * 2.0 / nt;
        const double wc = (k % 2 == 0 && sp.j % 2 == 0) ? pw * end * 2.0 * h * r * r * 2.0 / (nt / 2) : 0.0;
        emitFiber(proj, curve, sp.chart, {x, w, wc}, walker, line);
      }
    }
  });

  QuadratureGrid g;
  g.degree = curve.degree();
  g.resolution = n;
  g.seed = opts.seed;
  g.coordinateChange = proj.coordinateChange();
  g.nodes = nodes;
  g.specialPoints = basePts;
  g.excludedArea = excluded;
  std::size_t total = 0;
  for (const auto& l : lines) {
    total += l.recs.size();
    g.dropped += l.dropped;
  }
  for (auto* a : {&g.lift.z, &g.lift.dz, &g.lift.d2z, &g.grad}) a->resize(total);
  g.weight.resize(total);
  g.coarseWeight.resize(total);
  g.chart.resize(total);
  g.region.resize(total);
  std::size_t i = 0;
  for (const auto& l : lines) {
    for (const auto& r : l.recs) {
      g.lift.z.set(i, r.z);
      g.lift.dz.set(i, r.dz);
      g.lift.d2z.set(i, r.d2z);
      g.grad.set(i, r.grad);
      g.weight[i] = r.w;
      g.coarseWeight[i] = r.wc;
      g.chart[i] = r.chart;
      g.region[i] = l.region;
      ++i;
    }
  }
  kernels::metricTerms(g.lift, kernels::GroupData::from(CMatrix::Identity(3, 3)), g.base, kernels::defaultVariant());
  return g;
}

// ---------------------------------------------------------------------------
// Integration

Integral integrate(const QuadratureGrid& grid, std::span<const double> density) {
  if (density.size() != grid.size()) throw DimensionError("integrate: density length does not match the grid");
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (!std::isfinite(density[i]) && (grid.weight[i] != 0.0 || grid.coarseWeight[i] != 0.0)) {
      throw NumericFailure("integrate: non-finite density at sample " + std::to_string(i));
    }
  }
  const auto v = kernels::defaultVariant();
  Integral r;
  r.value = kernels::weightedSum(grid.weight, density, v);
  const double coarse = kernels::weightedSum(grid.coarseWeight, density, v);
  r.error = std::abs(r.value - coarse);
  return r;
}

Integral integrate(const QuadratureGrid& grid, const std::function<double(const CurveSample&)>& density) {
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = density(grid.sample(i));
  return integrate(grid, f);
}

}  // namespace pdual
