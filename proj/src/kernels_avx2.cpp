// AVX2 variant, compiled with -mavx2 only (no FMA).

#include <immintrin.h>

#include "kernel_impl.hpp"

namespace pdual::kernels {

namespace {

struct Avx2Lane {
  static constexpr std::size_t width = 4;
  __m256d v;
  static Avx2Lane load(const double* p) { return {_mm256_loadu_pd(p)}; }
  static Avx2Lane set1(double x) { return {_mm256_set1_pd(x)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }
  friend Avx2Lane operator+(Avx2Lane a, Avx2Lane b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend Avx2Lane operator-(Avx2Lane a, Avx2Lane b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend Avx2Lane operator*(Avx2Lane a, Avx2Lane b) { return {_mm256_mul_pd(a.v, b.v)}; }
  friend Avx2Lane operator/(Avx2Lane a, Avx2Lane b) { return {_mm256_div_pd(a.v, b.v)}; }
};

struct Avx2Reduce {
  __m256d v;
  static Avx2Reduce load4(const double* p) { return {_mm256_loadu_pd(p)}; }
  friend Avx2Reduce operator+(Avx2Reduce a, Avx2Reduce b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend Avx2Reduce operator*(Avx2Reduce a, Avx2Reduce b) { return {_mm256_mul_pd(a.v, b.v)}; }
  double horizontal() const {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return (t[0] + t[1]) + (t[2] + t[3]);
  }
};

}  // namespace

namespace detail {

void metricTermsAvx2(const LiftArrays& lift, const GroupData& g, MetricArrays& out, std::size_t begin,
                     std::size_t end) {
  impl::metricTermsRange<Avx2Lane>(lift, g, out, begin, end);
}

void transformedNormSqAvx2(const Vec3Array& v, const std::array<Complex, 9>& m, std::vector<double>& out,
                           std::size_t begin, std::size_t end) {
  impl::transformedNormSqRange<Avx2Lane>(v, m, out, begin, end);
}

void blockSumAvx2(const double* w, const double* f, std::size_t n, std::vector<double>& blocks) {
  blocks.resize(n / 16);
  impl::blockSums<Avx2Reduce>(w, f, n / 16, blocks.data());
}

}  // namespace detail

}  // namespace pdual::kernels
