#include "pdual/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "pdual/group.hpp"

namespace pdual {

Json Tolerances::toJson() const {
  return Json{{"ddbar", ddbar},
              {"spread_ratio", spreadRatio},
              {"signal_to_error", signalToError},
              {"slope", slope},
              {"linear_dependence", linearDependence},
              {"stability", stability}};
}

EnergySweep sweepEnergies(const PlaneCurve& curve, const std::vector<NamedSigma>& sigmas, int resolution,
                          std::uint64_t seed) {
  EnergySweep s;
  s.sigmas = sigmas;
  s.resolution = resolution;
  s.seed = seed;
  GridCache cache(curve, resolution, seed);
  for (const auto& ns : sigmas) {
    const QuadratureGrid& g = cache.forSigma(ns.sigma);
    s.values.push_back(energies(curve, ns.sigma, g));
    s.maxGridError = std::max(s.maxGridError, s.values.back().gridError);
    s.maxExcludedArea = std::max(s.maxExcludedArea, g.excludedArea);
  }
  s.gridBuilds = cache.builds();
  return s;
}

SlopeSweep sweepSlope(const PlaneCurve& curve, const OneParamSubgroup& lambda, const std::vector<double>& tGrid,
                      int resolution, std::uint64_t seed) {
  if (lambda.dim() != 3) throw DimensionError("slope sweep: plane curves need a 3-component subgroup");
  validateSlopeGrid(tGrid);
  std::vector<NamedSigma> sigmas;
  for (double t : tGrid) sigmas.push_back({"t=" + Json(t).dump(), lambda.at(t)});
  return SlopeSweep{lambda, tGrid, sweepEnergies(curve, sigmas, resolution, seed)};
}

std::vector<double> defaultTGrid() {
  std::vector<double> g;
  for (int k = 0; k <= 6; ++k) g.push_back(std::pow(10.0, 1.0 + k / 4.0));
  return g;
}

std::vector<NamedSigma> randomSL3Family(std::uint64_t seed, int count, double spread) {
  if (count < 1) throw InputError("random-sl3: count must be positive");
  if (!(spread > 0)) throw InputError("random-sl3: spread must be positive");
  std::mt19937_64 rng(seed);
  std::vector<NamedSigma> out;
  for (int k = 0; k < count; ++k) out.push_back({"random-" + std::to_string(k), randomSL3(rng, spread)});
  return out;
}

namespace {

struct Identity {
  std::string name;
  std::function<double(const NamedSigma&, const EnergyValues&)> residual, term, termError, slopeSide;
};

// Shared bounded-residual + slope contract.
VerificationReport runContract(const Identity& id, const EnergySweep& family, const std::optional<SlopeSweep>& slope,
                               const std::function<Rational(const OneParamSubgroup&, bool)>& predict,
                               const Tolerances& tol) {
  VerificationReport r;
  r.identity = id.name;
  r.grid = {family.resolution, family.maxGridError, family.maxExcludedArea};
  if (family.sigmas.empty()) throw InputError(id.name + ": empty σ family");
  double rmin = INFINITY, rmax = -INFINITY, tmin = INFINITY, tmax = -INFINITY;
  for (std::size_t k = 0; k < family.sigmas.size(); ++k) {
    const auto& s = family.sigmas[k];
    const auto& e = family.values[k];
    SigmaEntry entry{s.id, id.residual(s, e), id.term(s, e), id.termError(s, e)};
    if (!std::isfinite(entry.residual) || !std::isfinite(entry.term))
      throw NumericFailure(id.name + ": non-finite residual for " + s.id);
    rmin = std::min(rmin, entry.residual);
    rmax = std::max(rmax, entry.residual);
    tmin = std::min(tmin, entry.term);
    tmax = std::max(tmax, entry.term);
    r.termError = std::max(r.termError, entry.termError);
    r.entries.push_back(entry);
  }
  r.spread = rmax - rmin;
  r.termRange = tmax - tmin;
  if (!(r.spread < tol.spreadRatio * r.termRange))
    r.failures.push_back("spread/range = " + Json(r.spread / r.termRange).dump() + " ≥ " + Json(tol.spreadRatio).dump());
  if (!(r.termRange >= tol.signalToError * r.termError))
    r.failures.push_back("term range is within " + Json(tol.signalToError).dump() + "× quadrature error");

  if (slope) {
    const bool down = sweepTowardZero(slope->tGrid);
    std::vector<double> values;
    for (std::size_t k = 0; k < slope->sweep.sigmas.size(); ++k)
      values.push_back(id.slopeSide(slope->sweep.sigmas[k], slope->sweep.values[k]));
    const SlopeFit fit = fitSlope(slope->tGrid, values);
    r.slope.run = true;
    r.slope.predicted = predict(slope->lambda, down);
    r.slope.measured = fit.slope;
    r.slope.fitResidual = fit.residual;
    r.slope.lambda = slope->lambda.exponents();
    r.slope.tGrid = slope->tGrid;
    const double p = r.slope.predicted.get_d();
    if (!(std::abs(fit.slope - p) <= tol.slope * std::max(1.0, std::abs(p))))
      r.failures.push_back("slope " + Json(fit.slope).dump() + " vs predicted " + r.slope.predicted.get_str());
    r.grid.error = std::max(r.grid.error, slope->sweep.maxGridError);
  }
  r.pass = r.failures.empty();
  return r;
}

Json doubles(const std::vector<double>& v) { return Json(v); }

}  // namespace

Json VerificationReport::toJson(const Tolerances& tol, std::uint64_t seed) const {
  Json j;
  j["identity"] = identity;
  Json ids = Json::array(), res = Json::array(), terms = Json::array();
  for (const auto& e : entries) {
    ids.push_back(e.id);
    res.push_back(e.residual);
    terms.push_back(e.term);
  }
  j["sigma_id"] = ids;
  j["residual"] = res;
  j["term"] = terms;
  j["spread"] = spread;
  j["term_range"] = termRange;
  j["term_error"] = termError;
  if (slope.run) {
    j["slopes"] = Json{{"predicted", slope.predicted.get_str()},
                       {"predicted_value", slope.predicted.get_d()},
                       {"measured", slope.measured},
                       {"fit_residual", slope.fitResidual},
                       {"lambda", slope.lambda},
                       {"t_grid", doubles(slope.tGrid)}};
  } else {
    j["slopes"] = nullptr;
  }
  j["grid"] = Json{{"resolution", grid.resolution}, {"error", grid.error}, {"excluded_area", grid.excludedArea}};
  j["extra"] = extra;
  j["failures"] = failures;
  j["pass"] = pass;
  j["tolerances"] = tol.toJson();
  j["seed"] = seed;
  return j;
}

VerificationReport verifyDdbarIdentity(const PlaneCurve& curve, const std::vector<NamedSigma>& sigmas,
                                       const std::vector<CurveSample>& points, const Tolerances& tol) {
  VerificationReport r;
  r.identity = "ddbar";
  double worst = 0.0;
  for (const auto& s : sigmas) {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, ddbarResidual(curve, s.sigma, p));
    r.entries.push_back({s.id, m, std::log(std::norm(s.sigma.determinant())), 0.0});
    worst = std::max(worst, m);
  }
  r.spread = worst;
  r.extra["max_residual"] = worst;
  r.extra["points"] = points.size();
  if (!(worst < tol.ddbar)) r.failures.push_back("max pointwise residual " + Json(worst).dump());
  r.pass = r.failures.empty();
  return r;
}

VerificationReport verifyPlaneCurveIdentity(const PlaneCurve& curve, const QPoly& delta, const EnergySweep& family,
                                            const std::optional<SlopeSweep>& slope, const Tolerances& tol) {
  const int d = curve.degree();
  const double degDelta = delta.degree();
  Identity id{
      "planecurve",
      [&](const NamedSigma& s, const EnergyValues& e) {
        return logNormRatioDual(delta, s.sigma) - (4 * d * e.nu - 4 * degDelta * e.F0 - d * e.E1);
      },
      [&](const NamedSigma&, const EnergyValues& e) { return 4 * d * e.nu; },
      [&](const NamedSigma&, const EnergyValues& e) { return 4 * d * e.errors.nu; },
      [&](const NamedSigma&, const EnergyValues& e) { return 4 * d * e.nu - d * e.E1; }};
  auto predict = [&](const OneParamSubgroup& l, bool down) -> Rational {
    return predictEnergySlope(curve.f, delta, l, down).predicted;
  };
  VerificationReport r = runContract(id, family, slope, predict, tol);
  r.extra["slope_quantity"] = "4d*nu - d*E1";
  return r;
}

VerificationReport verifyAubinResultant(const PlaneCurve& curve, const EnergySweep& family,
                                        const std::optional<SlopeSweep>& slope, const Tolerances& tol) {
  const int d = curve.degree();
  Identity id{"aubin",
              [&](const NamedSigma&, const EnergyValues& e) { return -2 * d * e.F0 - e.logNormF; },
              [&](const NamedSigma&, const EnergyValues& e) { return -2 * d * e.F0; },
              [&](const NamedSigma&, const EnergyValues& e) { return 2 * d * e.errors.F0; },
              [&](const NamedSigma&, const EnergyValues& e) { return -2 * d * e.F0; }};
  const WeightPolytope nf = weightPolytope(curve.f, ActionKind::OnPoints);
  auto predict = [&](const OneParamSubgroup& l, bool down) -> Rational { return Rational(limitWeight(nf, l, down)); };
  VerificationReport r = runContract(id, family, slope, predict, tol);
  r.extra["slope_quantity"] = "-2d*F0";
  return r;
}

VerificationReport verifyTianHypersurface(const PlaneCurve& curve, const EnergySweep& family,
                                          const std::optional<SlopeSweep>& slope, const Tolerances& tol) {
  const int d = curve.degree();
  const double c = 1.5 * (d - 1);
  Identity id{"tian",
              [&](const NamedSigma&, const EnergyValues& e) { return d * e.nu - c * e.logNormF - e.psiBar; },
              [&](const NamedSigma&, const EnergyValues& e) { return d * e.nu; },
              [&](const NamedSigma&, const EnergyValues& e) { return d * e.errors.nu + e.errors.psiBar; },
              [&](const NamedSigma&, const EnergyValues& e) { return d * e.nu - e.psiBar; }};
  const WeightPolytope nf = weightPolytope(curve.f, ActionKind::OnPoints);
  auto predict = [&](const OneParamSubgroup& l, bool down) -> Rational {
    Rational k(3 * (d - 1), 2);
    k.canonicalize();
    return k * limitWeight(nf, l, down);
  };
  VerificationReport r = runContract(id, family, slope, predict, tol);
  r.extra["slope_quantity"] = "d*nu - Psi_B";

  // R_T + ((3−d)/2)·R_A vanishes up to quadrature error.
  double dep = 0.0, scale = 0.0, err = 0.0;
  for (std::size_t k = 0; k < family.values.size(); ++k) {
    const EnergyValues& e = family.values[k];
    const double rt = d * e.nu - c * e.logNormF - e.psiBar;
    const double ra = 0.5 * (3 - d) * (-2 * d * e.F0 - e.logNormF);
    dep = std::max(dep, std::abs(rt + ra));
    scale = std::max({scale, std::abs(rt), std::abs(ra)});
    err = std::max(err, d * e.errors.nu + e.errors.psiBar + std::abs(3 - d) * d * e.errors.F0);
  }
  r.extra["linear_dependence"] = Json{{"relation", "R_tian + ((3-d)/2) R_aubin = 0"},
                                     {"max_abs", dep},
                                     {"residual_scale", scale},
                                     {"quadrature_error", err}};
  if (!(dep <= tol.linearDependence * scale + err))
    r.failures.push_back("linear dependence with the aubin residual off by " + Json(dep).dump());
  r.pass = r.failures.empty();
  return r;
}

VerificationReport verifyVeroneseMT(const PlaneCurve& conic, const QPoly& deltaQ, const EnergySweep& family,
                                    const std::optional<SlopeSweep>& slope, const std::optional<EnergySweep>& doubled,
                                    const Tolerances& tol) {
  if (conic.degree() != 2) throw InputError("veronese: the curve must be a conic");
  Identity id{"veronese",
              [&](const NamedSigma& s, const EnergyValues& e) { return logNormRatioDual(deltaQ, s.sigma) - 6 * e.E1; },
              [&](const NamedSigma&, const EnergyValues& e) { return 6 * e.E1; },
              [&](const NamedSigma&, const EnergyValues& e) { return 6 * e.errors.E1; },
              [&](const NamedSigma&, const EnergyValues& e) { return 6 * e.E1; }};
  const WeightPolytope nd = weightPolytope(deltaQ, ActionKind::OnDual);
  auto predict = [&](const OneParamSubgroup& l, bool down) -> Rational { return Rational(limitWeight(nd, l, down)); };
  VerificationReport r = runContract(id, family, slope, predict, tol);
  r.extra["slope_quantity"] = "6*E1";

  auto minE1 = [](const EnergySweep& s) {
    double m = INFINITY;
    for (const auto& e : s.values) m = std::min(m, e.E1);
    return m;
  };
  const double m1 = minE1(family);
  r.extra["min_E1"] = m1;
  if (!std::isfinite(m1)) r.failures.push_back("min E1 is not finite");
  if (doubled) {
    const double m2 = minE1(*doubled);
    const double change = std::abs(m2 - m1);
    r.extra["min_E1_doubled"] = m2;
    r.extra["doubled_resolution"] = doubled->resolution;
    r.extra["min_E1_change"] = change;
    if (!(change <= tol.stability * std::max(1.0, std::abs(m1))))
      r.failures.push_back("min E1 moves by " + Json(change).dump() + " under resolution doubling");
  } else {
    r.extra["min_E1_doubled"] = nullptr;
    r.failures.push_back("resolution-doubling stability not run");
  }
  r.pass = r.failures.empty();
  return r;
}

VerificationReport verifyCalibration(const PlaneCurve& curve, int resolution, std::uint64_t seed) {
  const int d = curve.degree();
  const QuadratureGrid g = buildSampler(curve, resolution, seed);
  const Integral vol = integrate(g, g.base.rho);
  const Integral ric = integrate(g, g.base.ricci);
  const Integral dual = dualDegreeCheck(curve, g);
  VerificationReport r;
  r.identity = "calibration";
  r.grid = {resolution, std::max({vol.error, ric.error, dual.error}), g.excludedArea};
  const double ricTarget = (3 - d) * d;
  r.extra = Json{{"volume", vol.value},
                 {"volume_target", d},
                 {"dual_degree", dual.value},
                 {"dual_degree_target", d * (d - 1)},
                 {"ricci", ric.value},
                 {"ricci_target", ricTarget},
                 {"samples", g.size()},
                 {"dropped", g.dropped}};
  if (!(std::abs(vol.value - d) <= 0.005 * d)) r.failures.push_back("volume off by more than 0.5%");
  if (!(std::abs(dual.value - d * (d - 1)) <= 0.01 * d * (d - 1))) r.failures.push_back("dual degree off by more than 1%");
  const double ricTol = ricTarget == 0 ? 0.03 * d : 0.01 * std::abs(ricTarget);
  if (!(std::abs(ric.value - ricTarget) <= ricTol)) r.failures.push_back("Ricci integral off");
  r.pass = r.failures.empty();
  return r;
}

}  // namespace pdual
