// pdual: discriminants, weight polytopes and energy identities of plane curves.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "commands.hpp"
#include "pdual/version.hpp"

using namespace pdual;
using namespace pdual::cli;

namespace {

struct Flags {
  std::optional<std::string> config, curve, sigma, lambda, tGrid, tolerance, out, cache, which, target, inclusion;
  std::optional<int> resolution, degree, points;
  std::optional<std::uint64_t> seed;
};

void addFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
  cmd->add_option("--curve", f.curve, "curve file (polynomial JSON), fermat:<d> or veronese");
  cmd->add_option("--resolution", f.resolution, "quadrature resolution (default 512)");
  cmd->add_option("--seed", f.seed, "seed for grids and sample points (default 1)");
  cmd->add_option("--sigma", f.sigma,
                  "sigma family: random-sl3[:seed=,count=,spread=], random-gl3[:seed=,count=], diagonal:m0,m1,m2, "
                  "explicit:<file>");
  cmd->add_option("--lambda", f.lambda, "one-parameter subgroup for slope sweeps, e.g. 1,0,-1, or none");
  cmd->add_option("--t-grid", f.tGrid, "comma-separated t values (geometric, >= 3 decades of |t|^2)");
  cmd->add_option("--tolerance", f.tolerance, "overrides, e.g. spread_ratio=0.05,slope=0.02");
  cmd->add_option("--out", f.out, "output directory (default out)");
  cmd->add_option("--cache", f.cache, "cache directory for symbolic results");
}

RunConfig resolve(const std::string& command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  if (f.config) applyConfigFile(cfg, *f.config);
  if (f.curve) cfg.curve = *f.curve;
  if (f.resolution) cfg.resolution = *f.resolution;
  if (f.seed) cfg.seed = *f.seed;
  if (f.sigma) cfg.sigma = *f.sigma;
  if (f.lambda) cfg.lambda = *f.lambda;
  if (f.tGrid) cfg.tGrid = parseTGrid(*f.tGrid);
  if (f.tolerance) applyToleranceOverrides(cfg.tolerances, *f.tolerance);
  if (f.out) cfg.out = *f.out;
  if (f.cache) cfg.cache = *f.cache;
  if (f.which) cfg.which = *f.which;
  if (f.target) cfg.target = *f.target;
  if (f.degree) cfg.degree = *f.degree;
  if (f.inclusion) cfg.inclusion = *f.inclusion;
  if (f.points) cfg.points = *f.points;
  if (cfg.resolution < 32) throw InputError("resolution must be at least 32");
  if (cfg.points < 1) throw InputError("points must be positive");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminants, weight polytopes and energy identities of plane curves"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* disc = app.add_subcommand("discriminant", "dual discriminant of a plane curve (d <= 4)");
  auto* gres = app.add_subcommand("generic-resultant", "resultant of two generic binary forms");
  auto* gdis = app.add_subcommand("generic-discriminant", "discriminant of a generic binary form");
  auto* ver = app.add_subcommand("verify", "verify the identities");
  auto* poly = app.add_subcommand("polytope", "weight polytopes and the scaled-inclusion test");
  auto* slope = app.add_subcommand("slope", "predicted vs measured slopes along a one-parameter subgroup");
  auto* en = app.add_subcommand("energies", "energy functionals over a sigma family");
  for (auto* c : {disc, gres, gdis, ver, poly, slope, en}) addFlags(c, f);
  for (auto* c : {gres, gdis, poly}) c->add_option("--degree", f.degree, "binary form degree");
  ver->add_option("--which", f.which, "calibration|ddbar|planecurve|aubin|tian|veronese|all");
  ver->add_option("--points", f.points, "curve points for ddbar (default 100)");
  poly->add_option("--target", f.target, "delta|resultant|generic (default generic)");
  poly->add_option("--inclusion", f.inclusion, "check c*N(R) in N(Delta); c rational or auto = (d-1)/d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    const RunConfig cfg = resolve(sub->get_name(), f);
    if (sub == disc) return cmdDiscriminant(cfg);
    if (sub == gres) return cmdGenericResultant(cfg);
    if (sub == gdis) return cmdGenericDiscriminant(cfg);
    if (sub == ver) return cmdVerify(cfg);
    if (sub == poly) return cmdPolytope(cfg);
    if (sub == slope) return cmdSlope(cfg);
    return cmdEnergies(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
}
