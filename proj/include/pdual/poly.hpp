#pragma once

// Sparse homogeneous polynomials over Q (GMP rationals) or C (double).

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pdual/error.hpp"

namespace pdual {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class Space { Point, Dual };

inline constexpr int kMaxVars = 16;

/// Exponent vector. Only the first `nvars` entries are meaningful; the
/// rest stay zero so value comparison works across the whole array.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  int nvars = 0;

  Monomial() = default;
  explicit Monomial(int n) : nvars(n) {}
  Monomial(std::initializer_list<int> exps);

  static Monomial fromVector(const std::vector<int>& exps);
  std::vector<int> toVector() const;

  int degree() const;
  std::uint8_t operator[](int i) const { return e[i]; }
  std::uint8_t& operator[](int i) { return e[i]; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars == b.nvars && a.e == b.e;
  }
  Monomial operator*(const Monomial& o) const;
};

/// Graded lexicographic order with the leading monomial first: higher
/// total degree first, ties broken by the first differing exponent.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

namespace detail {
inline bool isZeroCoeff(const Rational& c) { return sgn(c) == 0; }
inline bool isZeroCoeff(const Complex& c) { return c == Complex(0.0, 0.0); }
}  // namespace detail

template <class C>
class Poly {
 public:
  using Coeff = C;
  using TermMap = std::map<Monomial, C, GrlexGreater>;

  Poly() = default;
  Poly(int nvars, int degree, Space space = Space::Point);

  static Poly zero(int nvars, int degree, Space space = Space::Point) {
    return Poly(nvars, degree, space);
  }
  static Poly constant(int nvars, const C& c, Space space = Space::Point);
  static Poly variable(int nvars, int i, Space space = Space::Point);
  static Poly monomial(const Monomial& m, const C& c, Space space = Space::Point);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  Space space() const { return space_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void setSpace(Space s) { space_ = s; }

  /// Adds c·m, dropping the term if it cancels. Throws DimensionError if
  /// m has the wrong arity or total degree.
  void addTerm(const Monomial& m, const C& c);
  C coeff(const Monomial& m) const;
  /// Leading (graded-lex largest) term; precondition: nonzero.
  const std::pair<const Monomial, C>& leading() const { return *terms_.begin(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const C& s);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const C& s) { return a *= s; }
  friend Poly operator*(const C& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) { return a.mul(b); }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_ &&
           (a.isZero() || a.degree_ == b.degree_);
  }

  Poly mul(const Poly& o) const;
  Poly pow(int k) const;
  /// Multiplies by the monomial m (exponent shift), scaling by c.
  Poly mulMonomial(const Monomial& m, const C& c) const;

 private:
  void checkCompatible(const Poly& o) const;

  int nvars_ = 0;
  int degree_ = 0;
  Space space_ = Space::Point;
  TermMap terms_;
};

using QPoly = Poly<Rational>;
using CPoly = Poly<Complex>;

extern template class Poly<Rational>;
extern template class Poly<Complex>;

/// Σ c_α x^α. Throws DimensionError if x has the wrong length.
Complex evalPoly(const CPoly& p, std::span<const Complex> x);
Complex evalPoly(const QPoly& p, std::span<const Complex> x);
Rational evalPoly(const QPoly& p, std::span<const Rational> x);

QPoly partialDerivative(const QPoly& p, int i);
CPoly partialDerivative(const CPoly& p, int i);

/// One-way promotion of exact coefficients to complex doubles.
CPoly toComplex(const QPoly& p);

/// ‖P‖²_FS = Σ |c_α|² / (α₀!···α_N!).
Rational fsNormSq(const QPoly& p);
double fsNormSq(const CPoly& p);

/// Returns R with P = Q·R, or throws InexactDivision.
QPoly exactDivide(const QPoly& p, const QPoly& q);

/// Integer-primitive representative with a positive leading coefficient.
QPoly canonical(const QPoly& p);

/// Largest m_i with z_i^{m_i} dividing every term, per variable.
Monomial monomialContent(const QPoly& p);
/// Divides every exponent vector by m (m must divide all terms).
QPoly divideMonomial(const QPoly& p, const Monomial& m);

std::string formatPoly(const QPoly& p, const std::string& varPrefix = "");
std::string formatPoly(const CPoly& p, const std::string& varPrefix = "");

}  // namespace pdual
