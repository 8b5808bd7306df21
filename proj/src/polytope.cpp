#include "pdual/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pdual/error.hpp"

namespace pdual {

std::string toString(ActionKind k) { return k == ActionKind::OnPoints ? "onPoints" : "onDual"; }

ActionKind actionKindFromString(const std::string& s) {
  if (s == "onPoints") return ActionKind::OnPoints;
  if (s == "onDual") return ActionKind::OnDual;
  throw InputError("unknown action kind '" + s + "'");
}

OneParamSubgroup::OneParamSubgroup(std::vector<long> m) : m_(std::move(m)) {
  if (m_.empty()) throw InputError("one-parameter subgroup: empty exponent vector");
  if (std::accumulate(m_.begin(), m_.end(), 0L) != 0) throw InputError("one-parameter subgroup: exponents must sum to 0");
}

CMatrix OneParamSubgroup::at(double t) const {
  CMatrix s = CMatrix::Zero(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) s(i, i) = std::pow(t, static_cast<double>(m_[i]));
  return s;
}

namespace {

LatticePoint weightOfMonomial(const Monomial& mono, int nvars, ActionKind kind, int latticeDim) {
  const int dim = latticeDim == 0 ? nvars : latticeDim;
  LatticePoint w(dim, 0);
  for (int i = 0; i < nvars; ++i) w[i % dim] += mono[i];
  if (kind == ActionKind::OnPoints) {
    for (auto& x : w) x = -x;
  }
  return w;
}

void checkFold(const QPoly& p, int latticeDim) {
  if (latticeDim < 0 || (latticeDim > 0 && p.nvars() % latticeDim != 0))
    throw DimensionError("supportWeights: " + std::to_string(p.nvars()) + " variables do not fold onto dimension " +
                         std::to_string(latticeDim));
}

QPoint toQ(const LatticePoint& p) {
  QPoint q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = Rational(p[i]);
  return q;
}

long dot(const LatticePoint& x, const std::vector<long>& m) {
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * m[i];
  return s;
}

}  // namespace

std::vector<LatticePoint> supportWeights(const QPoly& p, ActionKind kind, int latticeDim) {
  checkFold(p, latticeDim);
  std::vector<LatticePoint> out;
  for (const auto& [mono, c] : p.terms()) out.push_back(weightOfMonomial(mono, p.nvars(), kind, latticeDim));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatticePoint> WeightPolytope::vertexPoints() const {
  std::vector<LatticePoint> out;
  for (std::size_t v : vertices) out.push_back(points[v]);
  return out;
}

WeightPolytope weightPolytope(std::vector<LatticePoint> points, ActionKind kind) {
  if (points.empty()) throw InputError("weightPolytope: empty support");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw DimensionError("weightPolytope: points of mixed dimension");
  }
  WeightPolytope w;
  w.action = kind;
  w.points = std::move(points);
  if (w.points.size() == 1) {
    w.vertices = {0};
    HullMembership self;
    self.h.assign(w.dim(), Rational(0));
    self.h0 = -1;  // vacuous: no other points, and 0 + (−1) < 0 at the point itself
    w.vertexCertificates = {self};
    return w;
  }
  // A point is a vertex iff it is outside the hull of the others.
  std::vector<QPoint> all;
  for (const auto& p : w.points) all.push_back(toQ(p));
  for (std::size_t k = 0; k < all.size(); ++k) {
    std::vector<QPoint> others;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != k) others.push_back(all[j]);
    }
    HullMembership m = convexMembership(others, all[k]);
    if (m.inside) {
      w.interior.push_back(k);
      w.interiorCertificates.push_back(std::move(m));
    } else {
      w.vertices.push_back(k);
      w.vertexCertificates.push_back(std::move(m));
    }
  }
  return w;
}

WeightPolytope weightPolytope(const QPoly& p, ActionKind kind, int latticeDim) {
  if (p.isZero()) throw InputError("weightPolytope: zero polynomial");
  return weightPolytope(supportWeights(p, kind, latticeDim), kind);
}

bool verifyPolytope(const WeightPolytope& w) {
  if (w.vertices.size() != w.vertexCertificates.size() || w.interior.size() != w.interiorCertificates.size())
    return false;
  if (w.vertices.size() + w.interior.size() != w.points.size()) return false;
  std::vector<QPoint> all;
  for (const auto& p : w.points) all.push_back(toQ(p));
  auto check = [&](std::size_t k, const HullMembership& m) {
    std::vector<QPoint> others;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != k) others.push_back(all[j]);
    }
    if (others.empty()) return !m.inside && sgn(m.h0) < 0;
    return verifyMembership(others, all[k], m);
  };
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    if (w.vertexCertificates[i].inside || !check(w.vertices[i], w.vertexCertificates[i])) return false;
  }
  for (std::size_t i = 0; i < w.interior.size(); ++i) {
    if (!w.interiorCertificates[i].inside || !check(w.interior[i], w.interiorCertificates[i])) return false;
  }
  return true;
}

long weightOf(const WeightPolytope& w, const OneParamSubgroup& lambda) {
  if (w.dim() != lambda.dim())
    throw DimensionError("weightOf: polytope in dimension " + std::to_string(w.dim()) + ", subgroup in " +
                         std::to_string(lambda.dim()));
  long best = std::numeric_limits<long>::max();
  for (std::size_t v : w.vertices) best = std::min(best, dot(w.points[v], lambda.exponents()));
  return best;
}

long limitWeight(const WeightPolytope& w, const OneParamSubgroup& lambda, bool towardZero) {
  if (towardZero) return weightOf(w, lambda);
  std::vector<long> neg = lambda.exponents();
  for (auto& x : neg) x = -x;
  return -weightOf(w, OneParamSubgroup(neg));
}

bool sweepTowardZero(std::span<const double> tGrid) {
  if (tGrid.size() < 2) throw InputError("t-grid needs at least two points");
  const bool down = std::abs(tGrid[1]) < std::abs(tGrid[0]);
  for (std::size_t i = 1; i < tGrid.size(); ++i) {
    const double a = std::abs(tGrid[i - 1]), b = std::abs(tGrid[i]);
    if (a == b || (b < a) != down) throw InputError("t-grid must be strictly monotone in |t|");
  }
  return down;
}

std::vector<QPoint> tracelessProjection(const std::vector<LatticePoint>& points) {
  std::vector<QPoint> out;
  for (const auto& p : points) {
    QPoint q = toQ(p);
    Rational mean;
    for (const auto& x : q) mean += x;
    mean /= static_cast<long>(q.size());
    for (auto& x : q) x -= mean;
    out.push_back(std::move(q));
  }
  return out;
}

SlopeFit fitSlope(std::span<const double> tGrid, std::span<const double> values) {
  if (tGrid.size() != values.size()) throw DimensionError("fitSlope: grid and values differ in length");
  validateSlopeGrid(tGrid);
  SlopeFit f;
  const std::size_t n = tGrid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i]))
      throw NumericFailure("slope sweep: non-finite value at t = " + std::to_string(tGrid[i]));
    f.x.push_back(std::log(tGrid[i] * tGrid[i]));
    f.y.push_back(values[i]);
  }
  const double mx = std::accumulate(f.x.begin(), f.x.end(), 0.0) / n;
  const double my = std::accumulate(f.y.begin(), f.y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (f.x[i] - mx) * (f.x[i] - mx);
    sxy += (f.x[i] - mx) * (f.y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) f.residual = std::max(f.residual, std::abs(f.y[i] - f.intercept - f.slope * f.x[i]));
  return f;
}

void validateSlopeGrid(std::span<const double> tGrid) {
  sweepTowardZero(tGrid);
  const double ratio = std::abs(tGrid[1] / tGrid[0]);
  for (std::size_t i = 2; i < tGrid.size(); ++i) {
    if (std::abs(std::abs(tGrid[i] / tGrid[i - 1]) / ratio - 1.0) > 1e-9) throw InputError("t-grid must be geometric");
  }
  const double decades = std::abs(std::log10(std::norm(tGrid.back()) / std::norm(tGrid.front())));
  if (decades < 3.0 - 1e-9) throw InputError("t-grid must span at least three decades of |t|²");
}

SlopeFit measureSlope(const std::function<double(double)>& valueAt, std::span<const double> tGrid) {
  validateSlopeGrid(tGrid);
  std::vector<double> values;
  for (double t : tGrid) values.push_back(valueAt(t));
  return fitSlope(tGrid, values);
}

double logNormAlong(const QPoly& p, ActionKind kind, const OneParamSubgroup& lambda, double t, int latticeDim) {
  checkFold(p, latticeDim);
  const int dim = latticeDim == 0 ? p.nvars() : latticeDim;
  if (static_cast<std::size_t>(dim) != lambda.dim()) throw DimensionError("logNormAlong: dimension mismatch");
  if (p.isZero()) throw InputError("logNormAlong: zero polynomial");
  const double logT2 = std::log(t * t);
  // log Σ |c|²/α! · |t|^{2⟨w,m⟩}, by log-sum-exp.
  std::vector<double> base, moved;
  for (const auto& [mono, c] : p.terms()) {
    Rational fact = 1;
    for (int i = 0; i < p.nvars(); ++i)
      for (int k = 2; k <= mono[i]; ++k) fact *= k;
    const Rational mag = c * c / fact;
    const double lm = std::log(mag.get_d());
    base.push_back(lm);
    moved.push_back(lm + dot(weightOfMonomial(mono, p.nvars(), kind, latticeDim), lambda.exponents()) * logT2);
  }
  auto lse = [](const std::vector<double>& v) {
    const double mx = *std::max_element(v.begin(), v.end());
    double s = 0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
  };
  return lse(moved) - lse(base);
}

SlopePrediction predictEnergySlope(const QPoly& f, const QPoly& delta, const OneParamSubgroup& lambda,
                                   bool towardZero) {
  if (delta.isZero()) throw InputError("predictEnergySlope: discriminant unavailable");
  const long wd = limitWeight(weightPolytope(delta, ActionKind::OnDual), lambda, towardZero);
  const long wf = limitWeight(weightPolytope(f, ActionKind::OnPoints), lambda, towardZero);
  SlopePrediction s;
  s.identity = "planecurve: 4d*nu - d*E1";
  s.predicted = Rational(wd) - Rational(2L * delta.degree(), f.degree()) * wf;
  s.predicted.canonicalize();
  return s;
}

InclusionResult scaledInclusion(const WeightPolytope& p, const Rational& c, const WeightPolytope& q) {
  if (p.dim() != q.dim())
    throw DimensionError("scaledInclusion: polytopes in dimensions " + std::to_string(p.dim()) + " and " +
                         std::to_string(q.dim()));
  InclusionResult r;
  r.c = c;
  r.targetVertices = tracelessProjection(q.vertexPoints());
  const std::vector<QPoint> pv = tracelessProjection(p.vertexPoints());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    VertexInclusion vi;
    vi.vertex = p.vertices[i];
    vi.scaled = pv[i];
    for (auto& x : vi.scaled) x *= c;
    vi.membership = convexMembership(r.targetVertices, vi.scaled);
    r.included = r.included && vi.membership.inside;
    r.perVertex.push_back(std::move(vi));
  }
  return r;
}

bool verifyInclusion(const InclusionResult& r) {
  bool all = true;
  for (const auto& vi : r.perVertex) {
    if (!verifyMembership(r.targetVertices, vi.scaled, vi.membership)) return false;
    all = all && vi.membership.inside;
  }
  return all == r.included;
}

OneParamSubgroup separatorDirection(const HullMembership& m) {
  if (m.inside) throw InputError("separatorDirection: point is inside, no separator");
  // Drop the diagonal component (invisible on the traceless lattice), then clear denominators.
  QPoint h = m.h;
  Rational mean;
  for (const auto& x : h) mean += x;
  mean /= static_cast<long>(h.size());
  mpz_class den = 1;
  for (auto& x : h) {
    x -= mean;
    x.canonicalize();
    den = lcm(den, x.get_den());
  }
  mpz_class g = 0;
  std::vector<mpz_class> num;
  for (const auto& x : h) {
    num.push_back(x.get_num() * (den / x.get_den()));
    g = gcd(g, num.back());
  }
  std::vector<long> e;
  for (auto& x : num) e.push_back(g == 0 ? 0 : mpz_class(x / g).get_si());
  return OneParamSubgroup(e);
}

namespace {

Json rationals(const QPoint& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(x.get_str());
  return a;
}

}  // namespace

Json toJson(const WeightPolytope& w) {
  Json j;
  j["action"] = toString(w.action);
  j["points"] = w.points;
  j["vertices"] = w.vertexPoints();
  j["projected"] = false;
  return j;
}

Json toJson(const InclusionResult& r) {
  Json j;
  j["projected"] = true;
  j["projection"] = "traceless: subtract the coordinate mean";
  j["c"] = r.c.get_str();
  j["included"] = r.included;
  Json targets = Json::array();
  for (const auto& t : r.targetVertices) targets.push_back(rationals(t));
  j["target_vertices"] = targets;
  Json per = Json::array();
  for (const auto& vi : r.perVertex) {
    Json v;
    v["scaled_vertex"] = rationals(vi.scaled);
    v["inside"] = vi.membership.inside;
    if (vi.membership.inside) {
      v["witness"] = rationals(vi.membership.lambda);
    } else {
      v["separator"] = rationals(vi.membership.h);
      v["offset"] = vi.membership.h0.get_str();
      v["lambda"] = separatorDirection(vi.membership).exponents();
    }
    per.push_back(v);
  }
  j["vertices"] = per;
  return j;
}

}  // namespace pdual
