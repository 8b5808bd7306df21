#pragma once

// Run configuration: a JSON file plus command-line overrides (flags win).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pdual/polytope.hpp"
#include "pdual/verify.hpp"

namespace pdual::cli {

struct SigmaFamilySpec {
  enum class Kind { Explicit, Diagonal, RandomSL3, RandomGL3 };
  Kind kind = Kind::RandomSL3;
  std::filesystem::path file;  // explicit
  std::vector<long> m;         // diagonal
  std::uint64_t seed = 11;
  int count = 8;
  double spread = 8.0;

  /// "random-sl3[:seed=S,count=N,spread=X]", "random-gl3[:seed=S,count=N]",
  /// "diagonal:m0,m1,m2" or "explicit:<file>". InputError when malformed.
  static SigmaFamilySpec parse(const std::string& s);
  std::string describe() const;
  /// The family as matrices; `sl` rescales each to det 1. Diagonal specs
  /// become λ(t) over `tGrid`.
  std::vector<NamedSigma> materialize(bool sl, const std::vector<double>& tGrid) const;
};

struct RunConfig {
  std::string command;
  std::string curve;  // file path, or fermat:<d> / veronese
  int resolution = 512;
  std::uint64_t seed = 1;
  /// Unset: random-gl3:seed=11,count=10 for ddbar, random-sl3:seed=11,count=8,spread=8 otherwise.
  std::optional<std::string> sigma;
  std::string lambda = "1,0,-1";  // "none" skips slope sweeps
  std::vector<double> tGrid = defaultTGrid();
  Tolerances tolerances;
  std::filesystem::path out = "out";
  std::optional<std::filesystem::path> cache;
  // Command specific.
  std::string which = "all";
  std::string target = "generic";
  int degree = 2;
  std::optional<std::string> inclusion;
  int points = 100;  // ddbar sample points

  Json toJson() const;
};

/// Reads `path` and fills the fields it names; unknown keys are an InputError.
void applyConfigFile(RunConfig& cfg, const std::filesystem::path& path);

/// "0.05" style overrides: "spread_ratio=0.05,slope=0.02".
void applyToleranceOverrides(Tolerances& tol, const std::string& spec);
std::vector<double> parseTGrid(const std::string& s);
std::vector<long> parseIntList(const std::string& s);

/// The curve named by cfg.curve. InputError on a missing or bad file.
QPoly loadCurve(const std::string& spec);

}  // namespace pdual::cli
