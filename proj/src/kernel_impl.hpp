#pragma once

// Lane-generic kernel bodies shared by the scalar and AVX2 translation
// units. Every arithmetic step is spelled out so both variants perform the
// same IEEE operations in the same order; no FMA (built with
// -ffp-contract=off).

#include <cstddef>

#include "pdual/kernels.hpp"

namespace pdual::kernels::impl {

template <class L>
struct CL {
  L re, im;
};

template <class L>
inline CL<L> cadd(CL<L> a, CL<L> b) { return {a.re + b.re, a.im + b.im}; }
template <class L>
inline CL<L> csub(CL<L> a, CL<L> b) { return {a.re - b.re, a.im - b.im}; }
template <class L>
inline CL<L> cmul(CL<L> a, CL<L> b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
// a · conj(b)
template <class L>
inline CL<L> cmulConj(CL<L> a, CL<L> b) { return {a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im}; }
template <class L>
inline L cnorm(CL<L> a) { return a.re * a.re + a.im * a.im; }
template <class L>
inline CL<L> cconst(Complex c) { return {L::set1(c.real()), L::set1(c.imag())}; }

template <class L>
struct V3 {
  CL<L> c[3];
};

template <class L>
inline V3<L> load3(const Vec3Array& a, std::size_t i) {
  V3<L> v;
  for (int k = 0; k < 3; ++k) v.c[k] = {L::load(&a.re[k][i]), L::load(&a.im[k][i])};
  return v;
}

template <class L>
inline V3<L> matvec(const CL<L> (&m)[9], const V3<L>& v) {
  V3<L> r;
  for (int i = 0; i < 3; ++i) {
    CL<L> acc = cmul(m[3 * i], v.c[0]);
    acc = cadd(acc, cmul(m[3 * i + 1], v.c[1]));
    acc = cadd(acc, cmul(m[3 * i + 2], v.c[2]));
    r.c[i] = acc;
  }
  return r;
}

template <class L>
inline V3<L> cross(const V3<L>& a, const V3<L>& b) {
  return {{csub(cmul(a.c[1], b.c[2]), cmul(a.c[2], b.c[1])), csub(cmul(a.c[2], b.c[0]), cmul(a.c[0], b.c[2])),
           csub(cmul(a.c[0], b.c[1]), cmul(a.c[1], b.c[0]))}};
}

template <class L>
inline L norm3(const V3<L>& a) {
  return (cnorm(a.c[0]) + cnorm(a.c[1])) + cnorm(a.c[2]);
}

// ⟨a, b⟩ = Σ a_i conj(b_i)
template <class L>
inline CL<L> inner3(const V3<L>& a, const V3<L>& b) {
  return cadd(cadd(cmulConj(a.c[0], b.c[0]), cmulConj(a.c[1], b.c[1])), cmulConj(a.c[2], b.c[2]));
}

template <class L>
void metricTermsRange(const LiftArrays& lift, const GroupData& gd, MetricArrays& out, std::size_t begin,
                      std::size_t end) {
  CL<L> g[9], c[9];
  for (int k = 0; k < 9; ++k) {
    g[k] = cconst<L>(gd.g[k]);
    c[k] = cconst<L>(gd.cof[k]);
  }
  const L detAbs2 = L::set1(gd.detAbs2);
  const L two = L::set1(2.0);
  for (std::size_t i = begin; i + L::width <= end; i += L::width) {
    const V3<L> z = load3<L>(lift.z, i), dz = load3<L>(lift.dz, i), d2z = load3<L>(lift.d2z, i);
    const V3<L> v = matvec(g, z), dv = matvec(g, dz);
    const V3<L> a = cross(z, dz), b = cross(z, d2z);
    const V3<L> w = matvec(c, a), dw = matvec(c, b);
    const L nv = norm3(v);
    const L nw = norm3(w);
    const CL<L> ipv = inner3(dv, v);
    const CL<L> ipw = inner3(dw, w);
    // det(z, z', z'') = (z × z') · z''
    const CL<L> det = cadd(cadd(cmul(a.c[0], d2z.c[0]), cmul(a.c[1], d2z.c[1])), cmul(a.c[2], d2z.c[2]));
    const L nv2 = nv * nv;
    const L rho = nw / nv2;
    const L dlnRe = ipv.re / nv, dlnIm = ipv.im / nv;
    const L dlrRe = ipw.re / nw - two * dlnRe;
    const L dlrIm = ipw.im / nw - two * dlnIm;
    const L ric = two * rho - ((detAbs2 * cnorm(det)) * nv) / (nw * nw);
    nv.store(&out.normSq[i]);
    rho.store(&out.rho[i]);
    dlnRe.store(&out.dLogNormRe[i]);
    dlnIm.store(&out.dLogNormIm[i]);
    dlrRe.store(&out.dLogRhoRe[i]);
    dlrIm.store(&out.dLogRhoIm[i]);
    ric.store(&out.ricci[i]);
  }
}

template <class L>
void transformedNormSqRange(const Vec3Array& a, const std::array<Complex, 9>& m, std::vector<double>& out,
                            std::size_t begin, std::size_t end) {
  CL<L> mm[9];
  for (int k = 0; k < 9; ++k) mm[k] = cconst<L>(m[k]);
  for (std::size_t i = begin; i + L::width <= end; i += L::width) {
    norm3(matvec(mm, load3<L>(a, i))).store(&out[i]);
  }
}

// Block values of the fixed reduction order: for each block of 16,
// lane l accumulates ((p[l] + p[4+l]) + p[8+l]) + p[12+l], then
// (s0 + s1) + (s2 + s3). p = w·f, or f alone when w is null.
template <class L4>
void blockSums(const double* w, const double* f, std::size_t nblocks, double* blocks) {
  for (std::size_t b = 0; b < nblocks; ++b) {
    const double* fb = f + 16 * b;
    L4 acc = w ? L4::load4(w + 16 * b) * L4::load4(fb) : L4::load4(fb);
    for (int k = 1; k < 4; ++k) {
      L4 p = w ? L4::load4(w + 16 * b + 4 * k) * L4::load4(fb + 4 * k) : L4::load4(fb + 4 * k);
      acc = acc + p;
    }
    blocks[b] = acc.horizontal();
  }
}

}  // namespace pdual::kernels::impl
