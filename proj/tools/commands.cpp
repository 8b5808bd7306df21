#include "commands.hpp"

#include <cstdio>
#include <iostream>

#include "pdual/elimination.hpp"
#include "pdual/version.hpp"

namespace pdual::cli {

namespace {

Json header(const RunConfig& cfg) {
  Json j;
  j["version"] = kVersion;
  j["config"] = cfg.toJson();
  return j;
}

void write(const RunConfig& cfg, const std::string& name, const Json& j) {
  const auto path = cfg.out / name;
  writeJsonFile(path, j);
  std::cout << "wrote " << path.string() << "\n";
}

Json matrixJson(const CMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(row);
  }
  return rows;
}

std::string familySpec(const RunConfig& cfg, bool ddbar) {
  if (cfg.sigma) return *cfg.sigma;
  return ddbar ? "random-gl3:seed=11,count=10" : "random-sl3:seed=11,count=8,spread=8";
}

std::optional<OneParamSubgroup> lambdaOf(const RunConfig& cfg) {
  if (cfg.lambda == "none") return std::nullopt;
  OneParamSubgroup l(parseIntList(cfg.lambda));
  if (l.dim() != 3) throw InputError("--lambda needs three exponents");
  return l;
}

DualDiscriminant discriminantOf(const QPoly& f, const RunConfig& cfg) {
  DualDiscriminantOptions opts;
  opts.cacheDir = cfg.cache;
  return planeDualDiscriminant(f, opts);
}

Json provenance(const RunConfig& cfg) {
  return Json{{"cache", cfg.cache ? Json(cfg.cache->string()) : Json(nullptr)},
              {"discriminant", "planeDualDiscriminant (exact, canonical normalization)"}};
}

void printLine(const VerificationReport& r) {
  std::printf("%-12s %s", r.identity.c_str(), r.pass ? "PASS" : "FAIL");
  if (r.termRange > 0) std::printf("  spread/range=%.4f", r.spread / r.termRange);
  if (r.slope.run) std::printf("  slope=%.4f predicted=%s", r.slope.measured, r.slope.predicted.get_str().c_str());
  for (const auto& f : r.failures) std::printf("  [%s]", f.c_str());
  std::printf("\n");
}

int genericCommand(const RunConfig& cfg, EliminantKind kind) {
  const GenericEliminant g = kind == EliminantKind::Resultant ? genericBinaryResultant(cfg.degree, cfg.cache)
                                                              : genericBinaryDiscriminant(cfg.degree, cfg.cache);
  Json j = header(cfg);
  const bool res = kind == EliminantKind::Resultant;
  j["kind"] = res ? "resultant" : "discriminant";
  j["form_degree"] = g.formDegree;
  j["variables"] = res ? "c_0..c_d, e_0..e_d" : "a_0..a_d";
  j["degree"] = g.poly.degree();
  j["terms"] = g.poly.size();
  j["poly"] = toJson(g.poly);
  write(cfg, std::string(res ? "generic-resultant" : "generic-discriminant") + "-d" + std::to_string(cfg.degree) + ".json",
        j);
  std::printf("%s d=%d: degree %d, %zu terms\n", res ? "resultant" : "discriminant", cfg.degree, g.poly.degree(),
              g.poly.size());
  return kPass;
}

}  // namespace

int exitCodeFor(const std::exception& e) {
  if (dynamic_cast<const CapExceeded*>(&e)) return kCapExceeded;
  if (dynamic_cast<const NumericFailure*>(&e)) return kNumericFailure;
  if (dynamic_cast<const NotSmooth*>(&e)) return kVerificationFail;
  return kInputError;
}

int cmdDiscriminant(const RunConfig& cfg) {
  const QPoly f = loadCurve(cfg.curve);
  const DualDiscriminant r = discriminantOf(f, cfg);
  const int d = f.degree();
  const bool ok = r.delta.degree() == d * (d - 1);
  Json j = header(cfg);
  j["curve"] = toJson(f);
  j["delta"] = toJson(r.delta);
  j["degree"] = r.delta.degree();
  j["expected_degree"] = d * (d - 1);
  j["degree_ok"] = ok;
  j["chart"] = r.chart;
  j["provenance"] = provenance(cfg);
  write(cfg, "discriminant.json", j);
  std::printf("discriminant: degree %d (expected %d) %s\n", r.delta.degree(), d * (d - 1), ok ? "PASS" : "FAIL");
  return ok ? kPass : kVerificationFail;
}

int cmdGenericResultant(const RunConfig& cfg) { return genericCommand(cfg, EliminantKind::Resultant); }
int cmdGenericDiscriminant(const RunConfig& cfg) { return genericCommand(cfg, EliminantKind::Discriminant); }

int cmdVerify(const RunConfig& cfg) {
  static const std::vector<std::string> all{"calibration", "ddbar", "planecurve", "aubin", "tian", "veronese"};
  std::vector<std::string> which;
  if (cfg.which == "all") {
    which = all;
  } else if (std::find(all.begin(), all.end(), cfg.which) != all.end()) {
    which = {cfg.which};
  } else {
    throw InputError("unknown identity '" + cfg.which + "'");
  }
  const QPoly f = loadCurve(cfg.curve);
  const PlaneCurve curve(f);
  const int d = curve.degree();
  auto wants = [&](const char* n) { return std::find(which.begin(), which.end(), n) != which.end(); };
  if (cfg.which == "veronese" && d != 2) throw InputError("veronese needs a conic");

  const Tolerances& tol = cfg.tolerances;
  std::vector<VerificationReport> reports;
  std::optional<QPoly> delta;
  if (wants("planecurve") || (wants("veronese") && d == 2)) delta = discriminantOf(f, cfg).delta;

  if (wants("calibration")) reports.push_back(verifyCalibration(curve, cfg.resolution, cfg.seed));
  if (wants("ddbar")) {
    const auto sigmas = SigmaFamilySpec::parse(familySpec(cfg, true)).materialize(false, cfg.tGrid);
    const auto pts = randomCurvePoints(curve, static_cast<std::size_t>(cfg.points), cfg.seed);
    reports.push_back(verifyDdbarIdentity(curve, sigmas, pts, tol));
  }
  const bool quad = wants("planecurve") || wants("aubin") || wants("tian") || (wants("veronese") && d == 2);
  if (quad) {
    const SigmaFamilySpec spec = SigmaFamilySpec::parse(familySpec(cfg, false));
    const auto sigmas = spec.materialize(true, cfg.tGrid);
    const EnergySweep family = sweepEnergies(curve, sigmas, cfg.resolution, cfg.seed);
    std::optional<SlopeSweep> slope;
    if (const auto l = lambdaOf(cfg)) slope = sweepSlope(curve, *l, cfg.tGrid, cfg.resolution, cfg.seed);
    if (wants("planecurve")) reports.push_back(verifyPlaneCurveIdentity(curve, *delta, family, slope, tol));
    if (wants("aubin")) reports.push_back(verifyAubinResultant(curve, family, slope, tol));
    if (wants("tian")) reports.push_back(verifyTianHypersurface(curve, family, slope, tol));
    if (wants("veronese") && d == 2) {
      const EnergySweep doubled = sweepEnergies(curve, sigmas, 2 * cfg.resolution, cfg.seed);
      reports.push_back(verifyVeroneseMT(curve, *delta, family, slope, doubled, tol));
    }
    for (auto& r : reports) {
      if (r.identity != "calibration" && r.identity != "ddbar") r.extra["sigma_family"] = spec.describe();
    }
  }
  bool pass = true;
  for (const auto& r : reports) {
    Json j = header(cfg);
    j["report"] = r.toJson(tol, cfg.seed);
    j["provenance"] = provenance(cfg);
    write(cfg, "verify-" + r.identity + ".json", j);
    printLine(r);
    pass = pass && r.pass;
  }
  if (wants("veronese") && d != 2) std::printf("veronese     SKIPPED (curve is not a conic)\n");
  return pass ? kPass : kVerificationFail;
}

int cmdPolytope(const RunConfig& cfg) {
  // P is the resultant-side polytope, Q the discriminant side.
  WeightPolytope p, q;
  std::string pName, qName;
  int d = 0;
  if (cfg.target == "generic") {
    d = cfg.degree;
    p = weightPolytope(genericBinaryResultant(d, cfg.cache).poly, ActionKind::OnPoints, d + 1);
    q = weightPolytope(genericBinaryDiscriminant(d, cfg.cache).poly, ActionKind::OnDual);
    pName = "resultant";
    qName = "discriminant";
  } else if (cfg.target == "delta" || cfg.target == "resultant") {
    const QPoly f = loadCurve(cfg.curve);
    d = f.degree();
    p = weightPolytope(f, ActionKind::OnPoints);  // R_X = F for a plane curve
    q = weightPolytope(discriminantOf(f, cfg).delta, ActionKind::OnDual);
    pName = "resultant";
    qName = "delta";
  } else {
    throw InputError("unknown polytope target '" + cfg.target + "' (delta, resultant, generic)");
  }
  bool ok = verifyPolytope(p) && verifyPolytope(q);
  Json j = header(cfg);
  j["conventions"] = "onDual: a^alpha -> alpha; onPoints: z^beta -> -beta; resultant variables folded mod (d+1)";
  if (cfg.target != "delta") j[pName] = toJson(p);
  if (cfg.target != "resultant") j[qName] = toJson(q);
  const std::string base = "polytope-" + cfg.target + (cfg.target == "generic" ? "-d" + std::to_string(d) : "");
  write(cfg, base + ".json", j);
  std::printf("N(%s): %zu points, %zu vertices; N(%s): %zu points, %zu vertices\n", pName.c_str(), p.points.size(),
              p.vertices.size(), qName.c_str(), q.points.size(), q.vertices.size());

  if (cfg.inclusion) {
    Rational c;
    if (*cfg.inclusion == "auto") {
      c = Rational(d - 1, d);
      c.canonicalize();
    } else {
      c = parseRational(*cfg.inclusion);
    }
    const InclusionResult inc = scaledInclusion(p, c, q);
    const bool certified = verifyInclusion(inc);
    ok = ok && certified;
    Json ij = header(cfg);
    ij["statement"] = "c * N(" + pName + ") subset of N(" + qName + ")";
    ij["inclusion"] = toJson(inc);
    ij["certificates_verified"] = certified;
    write(cfg, base + "-inclusion.json", ij);
    std::printf("inclusion c=%s: %s (certificates %s)\n", c.get_str().c_str(), inc.included ? "true" : "false",
                certified ? "verified" : "INVALID");
  }
  return ok ? kPass : kVerificationFail;
}

int cmdSlope(const RunConfig& cfg) {
  const auto l = lambdaOf(cfg);
  if (!l) throw InputError("slope needs --lambda");
  const QPoly f = loadCurve(cfg.curve);
  const PlaneCurve curve(f);
  const int d = curve.degree();
  const QPoly delta = discriminantOf(f, cfg).delta;
  const bool down = sweepTowardZero(cfg.tGrid);
  const SlopeSweep sw = sweepSlope(curve, *l, cfg.tGrid, cfg.resolution, cfg.seed);
  const WeightPolytope nf = weightPolytope(f, ActionKind::OnPoints), nd = weightPolytope(delta, ActionKind::OnDual);
  const Rational wf = limitWeight(nf, *l, down), wd = limitWeight(nd, *l, down);

  struct Row {
    std::string term;
    Rational predicted;
    std::function<double(const NamedSigma&, const EnergyValues&)> value;
  };
  Rational tian(3 * (d - 1), 2);
  tian.canonicalize();
  std::vector<Row> rows{
      {"log|sigma.F|^2 (symbolic)", wf, [&](const NamedSigma& s, const EnergyValues&) { return logNormRatioPoint(f, s.sigma); }},
      {"log|sigma.Delta|^2 (symbolic)", wd,
       [&](const NamedSigma& s, const EnergyValues&) { return logNormRatioDual(delta, s.sigma); }},
      {"-2d*F0", wf, [&](const NamedSigma&, const EnergyValues& e) { return -2.0 * d * e.F0; }},
      {"4d*nu - d*E1", predictEnergySlope(f, delta, *l, down).predicted,
       [&](const NamedSigma&, const EnergyValues& e) { return 4.0 * d * e.nu - d * e.E1; }},
      {"d*nu - Psi_B", tian * wf, [&](const NamedSigma&, const EnergyValues& e) { return d * e.nu - e.psiBar; }},
  };
  if (d == 2)
    rows.push_back({"6*E1 (veronese)", wd, [&](const NamedSigma&, const EnergyValues& e) { return 6.0 * e.E1; }});

  Json table = Json::array();
  bool pass = true;
  for (const auto& row : rows) {
    std::vector<double> v;
    for (std::size_t k = 0; k < sw.sweep.sigmas.size(); ++k) v.push_back(row.value(sw.sweep.sigmas[k], sw.sweep.values[k]));
    const SlopeFit fit = fitSlope(cfg.tGrid, v);
    const double p = row.predicted.get_d();
    const bool ok = std::abs(fit.slope - p) <= cfg.tolerances.slope * std::max(1.0, std::abs(p));
    pass = pass && ok;
    table.push_back(Json{{"term", row.term},
                         {"predicted", row.predicted.get_str()},
                         {"measured", fit.slope},
                         {"fit_residual", fit.residual},
                         {"values", v},
                         {"pass", ok}});
    std::printf("%-32s predicted %-6s measured %9.4f  %s\n", row.term.c_str(), row.predicted.get_str().c_str(), fit.slope,
                ok ? "PASS" : "FAIL");
  }
  Json j = header(cfg);
  j["lambda"] = l->exponents();
  j["direction"] = down ? "t -> 0" : "t -> infinity";
  j["grid"] = Json{{"resolution", cfg.resolution}, {"error", sw.sweep.maxGridError}, {"builds", sw.sweep.gridBuilds}};
  j["rows"] = table;
  j["pass"] = pass;
  j["tolerances"] = cfg.tolerances.toJson();
  j["seed"] = cfg.seed;
  j["provenance"] = provenance(cfg);
  write(cfg, "slope.json", j);
  return pass ? kPass : kVerificationFail;
}

int cmdEnergies(const RunConfig& cfg) {
  const PlaneCurve curve(loadCurve(cfg.curve));
  const SigmaFamilySpec spec = SigmaFamilySpec::parse(familySpec(cfg, false));
  const EnergySweep sw = sweepEnergies(curve, spec.materialize(true, cfg.tGrid), cfg.resolution, cfg.seed);
  Json rows = Json::array();
  std::printf("%-12s %12s %12s %12s %12s %12s %10s\n", "sigma", "J", "I", "F0", "nu", "E1", "grid err");
  for (std::size_t k = 0; k < sw.sigmas.size(); ++k) {
    const EnergyValues& e = sw.values[k];
    rows.push_back(Json{{"sigma_id", sw.sigmas[k].id},
                        {"matrix", matrixJson(sw.sigmas[k].sigma)},
                        {"J", e.J},
                        {"I", e.I},
                        {"F0", e.F0},
                        {"nu", e.nu},
                        {"E1", e.E1},
                        {"E1_symmetric", e.E1Symmetric},
                        {"psi_bar", e.psiBar},
                        {"log_norm_F", e.logNormF},
                        {"volume", e.volume},
                        {"grid_error", e.gridError},
                        {"errors",
                         {{"J", e.errors.J},
                          {"I", e.errors.I},
                          {"F0", e.errors.F0},
                          {"nu", e.errors.nu},
                          {"E1", e.errors.E1},
                          {"psi_bar", e.errors.psiBar}}}});
    std::printf("%-12s %12.5f %12.5f %12.5f %12.5f %12.5f %10.2e\n", sw.sigmas[k].id.c_str(), e.J, e.I, e.F0, e.nu, e.E1,
                e.gridError);
  }
  Json j = header(cfg);
  j["sigma_family"] = spec.describe();
  j["grid"] = Json{{"resolution", sw.resolution}, {"max_error", sw.maxGridError}, {"excluded_area", sw.maxExcludedArea}};
  j["energies"] = rows;
  j["seed"] = cfg.seed;
  write(cfg, "energies.json", j);
  return kPass;
}

}  // namespace pdual::cli
