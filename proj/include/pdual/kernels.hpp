#pragma once

// Per-sample metric terms along a curve and fixed-order reductions.
//
// Two variants compute bit-identical results: a scalar reference and an
// AVX2 version (4 doubles per lane). Both run the same templated code with
// the same operation order; transcendental functions stay outside.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "pdual/linalg.hpp"

namespace pdual::kernels {

enum class Variant { Scalar, Avx2 };

bool avx2Supported();
/// AVX2 when the CPU has it, unless PDUAL_FORCE_SCALAR is set.
Variant defaultVariant();
const char* variantName(Variant v);

/// Complex 3-vectors per sample, struct-of-arrays.
struct Vec3Array {
  std::array<std::vector<double>, 3> re, im;

  std::size_t size() const { return re[0].size(); }
  void resize(std::size_t n);
  void set(std::size_t i, const std::array<Complex, 3>& v);
  std::array<Complex, 3> get(std::size_t i) const;
};

/// Holomorphic lift z(x) with first and second derivatives.
struct LiftArrays {
  Vec3Array z, dz, d2z;
  std::size_t size() const { return z.size(); }
};

/// g, its cofactor matrix det(g)·g⁻ᵀ, and |det g|², row-major.
struct GroupData {
  std::array<Complex, 9> g{}, cof{};
  double detAbs2 = 1.0;
  static GroupData from(const CMatrix& m);
};

/// For v = g z, w = cof(g)(z × z'):
///   normSq   = |v|²
///   rho      = |w|² / |v|⁴                      (pulled-back FS density)
///   dLogNorm = ⟨g z', v⟩ / |v|²                 (∂ log|v|²)
///   dLogRho  = ⟨cof(g)(z × z''), w⟩/|w|² − 2 dLogNorm
///   ricci    = 2 rho − |det g|² |det(z,z',z'')|² |v|² / |w|⁴
struct MetricArrays {
  std::vector<double> normSq, rho, dLogNormRe, dLogNormIm, dLogRhoRe, dLogRhoIm, ricci;
  void resize(std::size_t n);
};

void metricTerms(const LiftArrays& lift, const GroupData& g, MetricArrays& out, Variant v);

/// out[i] = |M v_i|² for a 3×3 complex M (row-major).
void transformedNormSq(const Vec3Array& v, const std::array<Complex, 9>& m, std::vector<double>& out, Variant var);

/// Σ x_i in a fixed blocked pairwise order (independent of variant).
double pairwiseSum(std::span<const double> x, Variant v);
/// Σ w_i f_i with the same order.
double weightedSum(std::span<const double> w, std::span<const double> f, Variant v);

namespace detail {
// Per-variant entry points; the dispatchers above pick one.
void metricTermsScalar(const LiftArrays&, const GroupData&, MetricArrays&, std::size_t begin, std::size_t end);
void transformedNormSqScalar(const Vec3Array&, const std::array<Complex, 9>&, std::vector<double>&, std::size_t begin,
                             std::size_t end);
void blockSumScalar(const double* w, const double* f, std::size_t n, std::vector<double>& blocks);
#if defined(PDUAL_HAVE_AVX2)
void metricTermsAvx2(const LiftArrays&, const GroupData&, MetricArrays&, std::size_t begin, std::size_t end);
void transformedNormSqAvx2(const Vec3Array&, const std::array<Complex, 9>&, std::vector<double>&, std::size_t begin,
                           std::size_t end);
void blockSumAvx2(const double* w, const double* f, std::size_t n, std::vector<double>& blocks);
#endif
}  // namespace detail

}  // namespace pdual::kernels
