#include "pdual/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pdual {

Monomial::Monomial(std::initializer_list<int> exps) : nvars(static_cast<int>(exps.size())) {
  if (nvars > kMaxVars) throw DimensionError("monomial: too many variables");
  int i = 0;
  for (int x : exps) {
    if (x < 0 || x > 255) throw DimensionError("monomial: exponent out of range");
    e[i++] = static_cast<std::uint8_t>(x);
  }
}

Monomial Monomial::fromVector(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) {
    throw DimensionError("monomial: too many variables");
  }
  Monomial m(static_cast<int>(exps.size()));
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 255) throw DimensionError("monomial: exponent out of range");
    m.e[i] = static_cast<std::uint8_t>(exps[i]);
  }
  return m;
}

std::vector<int> Monomial::toVector() const {
  return std::vector<int>(e.begin(), e.begin() + nvars);
}

int Monomial::degree() const {
  int d = 0;
  for (int i = 0; i < nvars; ++i) d += e[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(nvars);
  for (int i = 0; i < nvars; ++i) {
    int s = e[i] + o.e[i];
    if (s > 255) throw DimensionError("monomial: exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;
}

// ---------------------------------------------------------------------------

template <class C>
Poly<C>::Poly(int nvars, int degree, Space space)
    : nvars_(nvars), degree_(degree), space_(space) {
  if (nvars < 0 || nvars > kMaxVars) throw DimensionError("poly: bad variable count");
  if (degree < 0) throw DimensionError("poly: negative degree");
}

template <class C>
Poly<C> Poly<C>::constant(int nvars, const C& c, Space space) {
  Poly p(nvars, 0, space);
  p.addTerm(Monomial(nvars), c);
  return p;
}

template <class C>
Poly<C> Poly<C>::variable(int nvars, int i, Space space) {
  if (i < 0 || i >= nvars) throw DimensionError("poly: variable index out of range");
  Poly p(nvars, 1, space);
  Monomial m(nvars);
  m[i] = 1;
  p.addTerm(m, C(1));
  return p;
}

template <class C>
Poly<C> Poly<C>::monomial(const Monomial& m, const C& c, Space space) {
  Poly p(m.nvars, m.degree(), space);
  p.addTerm(m, c);
  return p;
}

template <class C>
void Poly<C>::addTerm(const Monomial& m, const C& c) {
  if (m.nvars != nvars_) throw DimensionError("poly: monomial arity mismatch");
  if (detail::isZeroCoeff(c)) return;
  if (terms_.empty() && m.degree() != degree_) {
    degree_ = m.degree();
  } else if (m.degree() != degree_) {
    throw DimensionError("poly: inhomogeneous term");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (detail::isZeroCoeff(it->second)) terms_.erase(it);
  }
}

template <class C>
C Poly<C>::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? C(0) : it->second;
}

template <class C>
void Poly<C>::checkCompatible(const Poly& o) const {
  if (nvars_ != o.nvars_) throw DimensionError("poly: variable count mismatch");
}

template <class C>
Poly<C>& Poly<C>::operator+=(const Poly& o) {
  checkCompatible(o);
  if (o.isZero()) return *this;
  if (isZero()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw DimensionError("poly: degree mismatch in sum");
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

template <class C>
Poly<C>& Poly<C>::operator-=(const Poly& o) {
  checkCompatible(o);
  if (o.isZero()) return *this;
  if (isZero()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw DimensionError("poly: degree mismatch in difference");
  for (const auto& [m, c] : o.terms_) addTerm(m, C(-c));
  return *this;
}

template <class C>
Poly<C>& Poly<C>::operator*=(const C& s) {
  if (detail::isZeroCoeff(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

template <class C>
Poly<C> Poly<C>::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

template <class C>
Poly<C> Poly<C>::mul(const Poly& o) const {
  checkCompatible(o);
  Poly r(nvars_, degree_ + o.degree_, space_);
  if (isZero() || o.isZero()) return r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      C prod = ca;
      prod *= cb;
      r.addTerm(ma * mb, prod);
    }
  }
  return r;
}

template <class C>
Poly<C> Poly<C>::pow(int k) const {
  if (k < 0) throw DimensionError("poly: negative power");
  Poly r = constant(nvars_, C(1), space_);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r.mul(base);
    k >>= 1;
    if (k > 0) base = base.mul(base);
  }
  return r;
}

template <class C>
Poly<C> Poly<C>::mulMonomial(const Monomial& m, const C& c) const {
  Poly r(nvars_, degree_ + m.degree(), space_);
  if (detail::isZeroCoeff(c)) return r;
  // Shifting every exponent by the same m preserves the order, so the map
  // can be filled with end hints.
  for (const auto& [mt, ct] : terms_) {
    C v = ct;
    v *= c;
    r.terms_.emplace_hint(r.terms_.end(), mt * m, std::move(v));
  }
  return r;
}

template class Poly<Rational>;
template class Poly<Complex>;

// ---------------------------------------------------------------------------

namespace {

template <class C, class T>
T evalImpl(const Poly<C>& p, std::span<const T> x, auto convert) {
  if (static_cast<int>(x.size()) != p.nvars()) {
    throw DimensionError("evalPoly: point has wrong dimension");
  }
  // Power tables per variable.
  std::vector<std::vector<T>> powers(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    powers[i].resize(static_cast<std::size_t>(p.degree()) + 1);
    powers[i][0] = T(1);
    for (int k = 1; k <= p.degree(); ++k) powers[i][k] = powers[i][k - 1] * x[i];
  }
  T sum(0);
  for (const auto& [m, c] : p.terms()) {
    T term = convert(c);
    for (int i = 0; i < p.nvars(); ++i) {
      if (m[i]) term *= powers[i][m[i]];
    }
    sum += term;
  }
  return sum;
}

template <class C>
Poly<C> partialImpl(const Poly<C>& p, int i) {
  if (i < 0 || i >= p.nvars()) throw DimensionError("partialDerivative: index out of range");
  Poly<C> r(p.nvars(), p.degree() > 0 ? p.degree() - 1 : 0, p.space());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    Monomial dm = m;
    dm[i] -= 1;
    C v = c;
    v *= C(static_cast<int>(m[i]));
    r.addTerm(dm, v);
  }
  return r;
}

Rational factorialProduct(const Monomial& m) {
  mpz_class f = 1;
  for (int i = 0; i < m.nvars; ++i) {
    mpz_class fi;
    mpz_fac_ui(fi.get_mpz_t(), m[i]);
    f *= fi;
  }
  return Rational(f);
}

}  // namespace

Complex evalPoly(const CPoly& p, std::span<const Complex> x) {
  return evalImpl<Complex, Complex>(p, x, [](const Complex& c) { return c; });
}

Complex evalPoly(const QPoly& p, std::span<const Complex> x) {
  return evalImpl<Rational, Complex>(p, x, [](const Rational& c) { return Complex(c.get_d(), 0.0); });
}

Rational evalPoly(const QPoly& p, std::span<const Rational> x) {
  return evalImpl<Rational, Rational>(p, x, [](const Rational& c) { return c; });
}

QPoly partialDerivative(const QPoly& p, int i) { return partialImpl(p, i); }
CPoly partialDerivative(const CPoly& p, int i) { return partialImpl(p, i); }

CPoly toComplex(const QPoly& p) {
  CPoly r(p.nvars(), p.degree(), p.space());
  for (const auto& [m, c] : p.terms()) r.addTerm(m, Complex(c.get_d(), 0.0));
  return r;
}

Rational fsNormSq(const QPoly& p) {
  Rational s = 0;
  for (const auto& [m, c] : p.terms()) s += c * c / factorialProduct(m);
  return s;
}

double fsNormSq(const CPoly& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double f = 1.0;
    for (int i = 0; i < m.nvars; ++i) f *= std::tgamma(static_cast<double>(m[i]) + 1.0);
    s += std::norm(c) / f;
  }
  return s;
}

QPoly exactDivide(const QPoly& p, const QPoly& q) {
  if (q.isZero()) throw InexactDivision("exactDivide: division by zero polynomial");
  if (p.nvars() != q.nvars()) throw DimensionError("exactDivide: variable count mismatch");
  QPoly quotient(p.nvars(), 0, p.space());
  if (p.isZero()) return quotient;
  if (p.degree() < q.degree()) throw InexactDivision("exactDivide: divisor degree too large");
  quotient = QPoly(p.nvars(), p.degree() - q.degree(), p.space());
  const auto& [lm, lc] = q.leading();
  QPoly rem = p;
  // If Q divides P, LT(Q) divides LT(rem) at every step, so a stall means
  // the division is inexact.
  while (!rem.isZero()) {
    const auto& [rm, rc] = rem.leading();
    Monomial shift(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) {
      if (rm[i] < lm[i]) throw InexactDivision("exactDivide: nonzero remainder");
      shift[i] = static_cast<std::uint8_t>(rm[i] - lm[i]);
    }
    Rational c = rc / lc;
    quotient.addTerm(shift, c);
    rem -= q.mulMonomial(shift, c);
  }
  return quotient;
}

QPoly canonical(const QPoly& p) {
  if (p.isZero()) return p;
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den, num);
  if (sgn(p.leading().second) < 0) scale = -scale;
  return p * scale;
}

Monomial monomialContent(const QPoly& p) {
  Monomial g(p.nvars());
  if (p.isZero()) return g;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    for (int i = 0; i < p.nvars(); ++i) {
      g[i] = first ? m[i] : std::min(g[i], m[i]);
    }
    first = false;
  }
  return g;
}

QPoly divideMonomial(const QPoly& p, const Monomial& g) {
  QPoly r(p.nvars(), std::max(0, p.degree() - g.degree()), p.space());
  for (const auto& [m, c] : p.terms()) {
    Monomial q(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) {
      if (m[i] < g[i]) throw InexactDivision("divideMonomial: monomial does not divide");
      q[i] = static_cast<std::uint8_t>(m[i] - g[i]);
    }
    r.addTerm(q, c);
  }
  return r;
}

namespace {

template <class C>
std::string toStringImpl(const Poly<C>& p, const std::string& prefix, auto fmt) {
  if (p.isZero()) return "0";
  const std::string var = prefix.empty() ? (p.space() == Space::Dual ? "a" : "z") : prefix;
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << fmt(c);
    for (int i = 0; i < m.nvars; ++i) {
      if (m[i] == 0) continue;
      os << "*" << var << i;
      if (m[i] > 1) os << "^" << static_cast<int>(m[i]);
    }
  }
  return os.str();
}

}  // namespace

std::string formatPoly(const QPoly& p, const std::string& prefix) {
  return toStringImpl(p, prefix, [](const Rational& c) { return "(" + c.get_str() + ")"; });
}

std::string formatPoly(const CPoly& p, const std::string& prefix) {
  return toStringImpl(p, prefix, [](const Complex& c) {
    std::ostringstream os;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
  });
}

}  // namespace pdual
