// Scalar reference variant.

#include "kernel_impl.hpp"

namespace pdual::kernels {

namespace {

struct ScalarLane {
  static constexpr std::size_t width = 1;
  double v;
  static ScalarLane load(const double* p) { return {*p}; }
  static ScalarLane set1(double x) { return {x}; }
  void store(double* p) const { *p = v; }
  friend ScalarLane operator+(ScalarLane a, ScalarLane b) { return {a.v + b.v}; }
  friend ScalarLane operator-(ScalarLane a, ScalarLane b) { return {a.v - b.v}; }
  friend ScalarLane operator*(ScalarLane a, ScalarLane b) { return {a.v * b.v}; }
  friend ScalarLane operator/(ScalarLane a, ScalarLane b) { return {a.v / b.v}; }
};

// Four scalar lanes, for the reduction pattern.
struct Scalar4 {
  double v[4];
  static Scalar4 load4(const double* p) { return {{p[0], p[1], p[2], p[3]}}; }
  friend Scalar4 operator+(Scalar4 a, Scalar4 b) {
    return {{a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2], a.v[3] + b.v[3]}};
  }
  friend Scalar4 operator*(Scalar4 a, Scalar4 b) {
    return {{a.v[0] * b.v[0], a.v[1] * b.v[1], a.v[2] * b.v[2], a.v[3] * b.v[3]}};
  }
  double horizontal() const { return (v[0] + v[1]) + (v[2] + v[3]); }
};

}  // namespace

namespace detail {

void metricTermsScalar(const LiftArrays& lift, const GroupData& g, MetricArrays& out, std::size_t begin,
                       std::size_t end) {
  impl::metricTermsRange<ScalarLane>(lift, g, out, begin, end);
}

void transformedNormSqScalar(const Vec3Array& v, const std::array<Complex, 9>& m, std::vector<double>& out,
                             std::size_t begin, std::size_t end) {
  impl::transformedNormSqRange<ScalarLane>(v, m, out, begin, end);
}

void blockSumScalar(const double* w, const double* f, std::size_t n, std::vector<double>& blocks) {
  blocks.resize(n / 16);
  impl::blockSums<Scalar4>(w, f, n / 16, blocks.data());
}

}  // namespace detail

}  // namespace pdual::kernels
