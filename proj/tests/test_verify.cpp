#include <doctest.h>

#include <cmath>

#include "pdual/elimination.hpp"
#include "pdual/group.hpp"
#include "pdual/verify.hpp"

using namespace pdual;

namespace {

QPoly z(int i) { return QPoly::variable(3, i); }
QPoly fermat(int d) { return z(0).pow(d) + z(1).pow(d) + z(2).pow(d); }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("ddbar report over random GL elements, including the det term") {
    const PlaneCurve c(fermat(3));
    std::mt19937_64 rng(5);
    std::vector<NamedSigma> sigmas{{"identity", CMatrix::Identity(3, 3)}, {"2I", 2.0 * CMatrix::Identity(3, 3)}};
    for (int k = 0; k < 4; ++k) sigmas.push_back({"gl-" + std::to_string(k), randomGL3(rng)});
    const auto pts = randomCurvePoints(c, 40, 9);
    const VerificationReport r = verifyDdbarIdentity(c, sigmas, pts, Tolerances{});
    CHECK(r.pass);
    CHECK(r.entries[0].residual == 0.0);
    CHECK(r.entries[1].term == doctest::Approx(std::log(64.0)));
  }

  TEST_CASE("identity σ: energies vanish and residuals are zero") {
    const PlaneCurve c(fermat(2));
    const QPoly delta = planeDualDiscriminant(c.f).delta;
    const EnergySweep s = sweepEnergies(c, {{"identity", CMatrix::Identity(3, 3)}}, 128, 1);
    const Tolerances tol;
    for (const auto& r : {verifyPlaneCurveIdentity(c, delta, s, std::nullopt, tol),
                          verifyAubinResultant(c, s, std::nullopt, tol), verifyTianHypersurface(c, s, std::nullopt, tol)}) {
      CHECK(r.entries.size() == 1);
      CHECK(r.entries[0].residual == 0.0);
      CHECK(r.entries[0].term == 0.0);
      CHECK_FALSE(r.pass);  // no dynamic range with a single σ
    }
  }

  TEST_CASE("conic: bounded residuals and polytope slopes at resolution 256") {
    const PlaneCurve c(fermat(2));
    const QPoly delta = planeDualDiscriminant(c.f).delta;
    const Tolerances tol;
    const EnergySweep fam = sweepEnergies(c, randomSL3Family(11, 6, 8), 256, 1);
    const SlopeSweep sl = sweepSlope(c, OneParamSubgroup({1, 0, -1}), defaultTGrid(), 256, 1);
    CHECK(sl.sweep.gridBuilds == 1);  // one grid serves the whole diagonal family

    const VerificationReport p = verifyPlaneCurveIdentity(c, delta, fam, sl, tol);
    const VerificationReport a = verifyAubinResultant(c, fam, sl, tol);
    const VerificationReport t = verifyTianHypersurface(c, fam, sl, tol);
    for (const auto* r : {&p, &a, &t}) {
      INFO(r->toJson(tol, 1).dump());
      CHECK(r->pass);
    }
    CHECK(p.slope.predicted == -2);
    CHECK(a.slope.predicted == 2);
    CHECK(t.slope.predicted == 3);
    CHECK(t.extra["linear_dependence"]["max_abs"].get<double>() < 1e-6);

    // Report shape.
    const Json j = p.toJson(tol, 7);
    for (const char* key : {"identity", "sigma_id", "residual", "spread", "term_range", "slopes", "grid", "pass"})
      CHECK(j.contains(key));
    CHECK(j["grid"]["resolution"] == 256);
    CHECK(j["seed"] == 7);
  }

  TEST_CASE("Veronese report carries min E1 and its doubling check") {
    const PlaneCurve q(z(0) * z(2) - z(1) * z(1));
    const QPoly deltaQ = planeDualDiscriminant(q.f).delta;
    const auto family = randomSL3Family(11, 3, 8);
    const EnergySweep s1 = sweepEnergies(q, family, 128, 1);
    const EnergySweep s2 = sweepEnergies(q, family, 256, 1);
    const VerificationReport r = verifyVeroneseMT(q, deltaQ, s1, std::nullopt, s2, Tolerances{});
    CHECK(std::isfinite(r.extra["min_E1"].get<double>()));
    CHECK(r.extra["min_E1_change"].get<double>() < 0.01 * std::abs(r.extra["min_E1"].get<double>()));
    const VerificationReport noDouble = verifyVeroneseMT(q, deltaQ, s1, std::nullopt, std::nullopt, Tolerances{});
    CHECK_FALSE(noDouble.pass);
    CHECK_THROWS_AS(verifyVeroneseMT(PlaneCurve(fermat(3)), deltaQ, s1, std::nullopt, s2, Tolerances{}), InputError);
  }

  TEST_CASE("calibration report") {
    const VerificationReport r = verifyCalibration(PlaneCurve(fermat(2)), 256, 1);
    CHECK(r.pass);
    CHECK(r.extra["volume"].get<double>() == doctest::Approx(2).epsilon(1e-4));
  }

  TEST_CASE("family helpers validate input") {
    CHECK_THROWS_AS(randomSL3Family(1, 0, 8), InputError);
    CHECK_THROWS_AS(randomSL3Family(1, 3, -1), InputError);
    CHECK(randomSL3Family(3, 2, 8)[1].sigma.isApprox(randomSL3Family(3, 2, 8)[1].sigma, 0));
    const auto g = defaultTGrid();
    CHECK(g.front() * g.front() == doctest::Approx(1e2));
    CHECK(g.back() * g.back() == doctest::Approx(1e5));
  }
}
