#include "pdual/kernels.hpp"

#include <cstdlib>

namespace pdual::kernels {

bool avx2Supported() {
#if defined(PDUAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Variant defaultVariant() {
  static const Variant v = [] {
    if (std::getenv("PDUAL_FORCE_SCALAR")) return Variant::Scalar;
    return avx2Supported() ? Variant::Avx2 : Variant::Scalar;
  }();
  return v;
}

const char* variantName(Variant v) { return v == Variant::Avx2 ? "avx2" : "scalar"; }

void Vec3Array::resize(std::size_t n) {
  for (int k = 0; k < 3; ++k) {
    re[k].resize(n);
    im[k].resize(n);
  }
}

void Vec3Array::set(std::size_t i, const std::array<Complex, 3>& v) {
  for (int k = 0; k < 3; ++k) {
    re[k][i] = v[k].real();
    im[k][i] = v[k].imag();
  }
}

std::array<Complex, 3> Vec3Array::get(std::size_t i) const {
  return {Complex(re[0][i], im[0][i]), Complex(re[1][i], im[1][i]), Complex(re[2][i], im[2][i])};
}

void MetricArrays::resize(std::size_t n) {
  for (auto* v : {&normSq, &rho, &dLogNormRe, &dLogNormIm, &dLogRhoRe, &dLogRhoIm, &ricci}) v->resize(n);
}

GroupData GroupData::from(const CMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw DimensionError("GroupData: 3×3 matrix expected");
  GroupData d;
  const Complex det = m.determinant();
  const CMatrix cof = det * m.inverse().transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d.g[3 * i + j] = m(i, j);
      d.cof[3 * i + j] = cof(i, j);
    }
  d.detAbs2 = std::norm(det);
  return d;
}

namespace {

Variant resolve(Variant v) { return (v == Variant::Avx2 && !avx2Supported()) ? Variant::Scalar : v; }

}  // namespace

void metricTerms(const LiftArrays& lift, const GroupData& g, MetricArrays& out, Variant v) {
  const std::size_t n = lift.size();
  out.resize(n);
  std::size_t done = 0;
#if defined(PDUAL_HAVE_AVX2)
  if (resolve(v) == Variant::Avx2) {
    done = n - n % 4;
    detail::metricTermsAvx2(lift, g, out, 0, done);
  }
#else
  (void)v;
#endif
  detail::metricTermsScalar(lift, g, out, done, n);
}

void transformedNormSq(const Vec3Array& a, const std::array<Complex, 9>& m, std::vector<double>& out, Variant v) {
  const std::size_t n = a.size();
  out.resize(n);
  std::size_t done = 0;
#if defined(PDUAL_HAVE_AVX2)
  if (resolve(v) == Variant::Avx2) {
    done = n - n % 4;
    detail::transformedNormSqAvx2(a, m, out, 0, done);
  }
#else
  (void)v;
#endif
  detail::transformedNormSqScalar(a, m, out, done, n);
}

namespace {

double tree(const std::vector<double>& b, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return b[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree(b, lo, mid) + tree(b, mid, hi);
}

double reduce(const double* w, const double* f, std::size_t n, Variant v) {
  if (n == 0) return 0.0;
  // Pad to a multiple of 16 so every variant walks identical blocks.
  const std::size_t full = n - n % 16;
  std::vector<double> blocks;
#if defined(PDUAL_HAVE_AVX2)
  if (resolve(v) == Variant::Avx2) {
    detail::blockSumAvx2(w, f, full, blocks);
  } else {
    detail::blockSumScalar(w, f, full, blocks);
  }
#else
  (void)v;
  detail::blockSumScalar(w, f, full, blocks);
#endif
  if (full < n) {
    double tw[16] = {}, tf[16] = {};
    for (std::size_t i = full; i < n; ++i) {
      tf[i - full] = f[i];
      if (w) tw[i - full] = w[i];
    }
    std::vector<double> tail;
    detail::blockSumScalar(w ? tw : nullptr, tf, 16, tail);
    blocks.push_back(tail[0]);
  }
  return tree(blocks, 0, blocks.size());
}

}  // namespace

double pairwiseSum(std::span<const double> x, Variant v) { return reduce(nullptr, x.data(), x.size(), v); }

double weightedSum(std::span<const double> w, std::span<const double> f, Variant v) {
  if (w.size() != f.size()) throw DimensionError("weightedSum: length mismatch");
  return reduce(w.data(), f.data(), f.size(), v);
}

}  // namespace pdual::kernels
