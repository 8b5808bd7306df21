#pragma once

// Verification of the energy identities.
//
// The quadrature identities are checked as "bounded residual + exact slopes":
// over a family of σ the residual must vary little compared with the terms it
// balances, and along a one-parameter subgroup the energy side must grow at
// the rate the weight polytopes predict.
//
//   planecurve  R = log‖σΔ‖²/‖Δ‖² − [4dν − 4 deg Δ·F⁰ − dE₁]     term 4dν
//   aubin       R = −2dF⁰ − log‖σF‖²/‖F‖²                        term −2dF⁰
//   tian        R = dν − (3(d−1)/2)·log‖σF‖²/‖F‖² − Ψ_B           term dν
//   veronese    R = log‖σΔ_Q‖²/‖Δ_Q‖² − 6E₁                        term 6E₁

#include <optional>
#include <string>
#include <vector>

#include "pdual/energy.hpp"
#include "pdual/polytope.hpp"

namespace pdual {

struct Tolerances {
  double ddbar = 1e-8;          // pointwise, absolute
  double spreadRatio = 0.05;    // spread(R) / range(term)
  double signalToError = 10.0;  // range(term) ≥ this × quadrature error of the term
  double slope = 0.02;          // |measured − predicted| ≤ slope·max(1, |predicted|)
  double linearDependence = 0.05;
  double stability = 0.01;      // relative change of min E₁ under resolution doubling

  Json toJson() const;
};

struct NamedSigma {
  std::string id;
  CMatrix sigma;
};

/// Energies of every σ of a family, each on a grid adapted to it.
struct EnergySweep {
  std::vector<NamedSigma> sigmas;
  std::vector<EnergyValues> values;
  int resolution = 0;
  std::uint64_t seed = 0;
  double maxGridError = 0.0;
  double maxExcludedArea = 0.0;
  std::size_t gridBuilds = 0;
};

EnergySweep sweepEnergies(const PlaneCurve& curve, const std::vector<NamedSigma>& sigmas, int resolution,
                          std::uint64_t seed);

/// A diagonal family λ(t) with its energies.
struct SlopeSweep {
  OneParamSubgroup lambda;
  std::vector<double> tGrid;
  EnergySweep sweep;
};

SlopeSweep sweepSlope(const PlaneCurve& curve, const OneParamSubgroup& lambda, const std::vector<double>& tGrid,
                      int resolution, std::uint64_t seed);

/// |t| = 10^{1 + k/4}, k = 0..6: |t|² from 1e2 to 1e5.
std::vector<double> defaultTGrid();

/// `count` random SL(3,C) elements (see randomSL3), ids "random-<k>".
std::vector<NamedSigma> randomSL3Family(std::uint64_t seed, int count, double spread);

struct SigmaEntry {
  std::string id;
  double residual = 0.0;
  double term = 0.0;
  double termError = 0.0;
};

struct VerificationReport {
  std::string identity;
  std::vector<SigmaEntry> entries;
  double spread = 0.0, termRange = 0.0, termError = 0.0;
  struct Slope {
    bool run = false;
    Rational predicted;
    double measured = 0.0;
    double fitResidual = 0.0;
    std::vector<long> lambda;
    std::vector<double> tGrid;
  } slope;
  struct Grid {
    int resolution = 0;
    double error = 0.0;
    double excludedArea = 0.0;
  } grid;
  /// Identity-specific numbers (min E₁, linear dependence, pointwise max, ...).
  Json extra = Json::object();
  std::vector<std::string> failures;
  bool pass = false;

  Json toJson(const Tolerances& tol, std::uint64_t seed) const;
};

/// Pointwise: φ̂_σ∘ρ_F = 2φ_σ + log(ω_σ/ω) − log|det σ|², exact up to roundoff.
VerificationReport verifyDdbarIdentity(const PlaneCurve& curve, const std::vector<NamedSigma>& sigmas,
                                       const std::vector<CurveSample>& points, const Tolerances& tol);

VerificationReport verifyPlaneCurveIdentity(const PlaneCurve& curve, const QPoly& delta, const EnergySweep& family,
                                            const std::optional<SlopeSweep>& slope, const Tolerances& tol);
VerificationReport verifyAubinResultant(const PlaneCurve& curve, const EnergySweep& family,
                                        const std::optional<SlopeSweep>& slope, const Tolerances& tol);
/// Also checks R_T = −((3−d)/2)·R_A on the same family.
VerificationReport verifyTianHypersurface(const PlaneCurve& curve, const EnergySweep& family,
                                          const std::optional<SlopeSweep>& slope, const Tolerances& tol);
/// `doubled` (the same family at twice the resolution) feeds the stability
/// check of min E₁; without it the check is reported as not run and fails.
VerificationReport verifyVeroneseMT(const PlaneCurve& conic, const QPoly& deltaQ, const EnergySweep& family,
                                    const std::optional<SlopeSweep>& slope, const std::optional<EnergySweep>& doubled,
                                    const Tolerances& tol);

/// Calibration: ∫ω = d, ∫ρ*ω̂ = d(d−1), ∫Ric = (3−d)d on a plain grid.
VerificationReport verifyCalibration(const PlaneCurve& curve, int resolution, std::uint64_t seed);

}  // namespace pdual
