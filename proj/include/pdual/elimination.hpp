#pragma once

// Dual discriminants of plane curves and generic eliminants of binary forms.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pdual/linalg.hpp"
#include "pdual/poly.hpp"

namespace pdual {

inline constexpr int kMaxDualDiscriminantDegree = 4;
inline constexpr int kMaxGenericDegree = 5;

/// g(s,u) = Σ coeffs[i] s^{d−i} u^i with coefficients in Q[a0,a1,a2].
struct BinaryForm {
  std::vector<QPoly> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// a_k^d · F restricted to the line a·z = 0, parametrized by
///   z_i = a_k s, z_j = a_k u, z_k = −(a_i s + a_j u),   (i < j the other indices).
BinaryForm restrictToLine(const QPoly& f, int chart);

/// Res_t(g(t,1), g'(t,1)) / lead(g). Throws InexactDivision when the
/// leading coefficient vanishes identically or does not divide.
QPoly binaryDiscriminant(const BinaryForm& g);

enum class SmoothVerdict { Smooth, Singular, Inconclusive };

struct SmoothnessCertificate {
  SmoothVerdict verdict = SmoothVerdict::Inconclusive;
  std::string method;
  /// Smallest normalized |∂₂F'| found at common zeros of ∂₀F', ∂₁F'
  /// (0 when they share a component).
  double minGradient = 0.0;
  double smoothThreshold = 1e-6;
  double singularThreshold = 1e-9;
  QMatrix coordinateChange;
  /// Approximate singular points (original coordinates) when found.
  std::vector<std::vector<Complex>> singularPoints;
};

/// Common zeros of ∂₀F', ∂₁F' (F' = F∘U for a random integer matrix U) are
/// located through the exact resultant in z₂ and checked against ∂₂F'.
SmoothnessCertificate smoothnessCheck(const QPoly& f, std::uint64_t seed = 1);

struct DualDiscriminant {
  QPoly delta;  // in dual variables, canonical normalization
  int sourceDegree = 0;
  int chart = -1;
};

struct DualDiscriminantOptions {
  bool requireSmooth = true;
  int chart = -1;  // -1: try 2, 1, 0
  std::optional<std::filesystem::path> cacheDir;
};

/// Throws CapExceeded for d > 4, NotSmooth when the smoothness check does
/// not certify F, and Error when the extraneous factor is not monomial.
DualDiscriminant planeDualDiscriminant(const QPoly& f, const DualDiscriminantOptions& opts = {});

enum class EliminantKind { Resultant, Discriminant };

struct GenericEliminant {
  QPoly poly;
  EliminantKind kind = EliminantKind::Discriminant;
  int formDegree = 0;
};

/// Res(Σ c_i s^{d−i}u^i, Σ e_i s^{d−i}u^i) in variables (c_0..c_d, e_0..e_d).
GenericEliminant genericBinaryResultant(int d, const std::optional<std::filesystem::path>& cacheDir = {});
/// Discriminant of Σ a_i s^{d−i}u^i in variables (a_0..a_d).
GenericEliminant genericBinaryDiscriminant(int d, const std::optional<std::filesystem::path>& cacheDir = {});

}  // namespace pdual
