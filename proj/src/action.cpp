#include "pdual/action.hpp"

namespace pdual {

namespace {

// Expands P(Mz) by substituting z_i -> Σ_j M_ij z_j, caching powers of the
// linear forms.
template <class C, class Mat>
Poly<C> substitute(const Poly<C>& p, const Mat& m, auto entry) {
  const int n = p.nvars();
  Poly<C> result(n, p.degree(), p.space());
  if (p.isZero()) return result;
  std::vector<std::vector<Poly<C>>> powers(n);
  for (int i = 0; i < n; ++i) {
    Poly<C> form(n, 1, p.space());
    for (int j = 0; j < n; ++j) {
      Monomial mj(n);
      mj[j] = 1;
      form.addTerm(mj, entry(m, i, j));
    }
    powers[i].push_back(Poly<C>::constant(n, C(1), p.space()));
    powers[i].push_back(form);
  }
  auto power = [&](int i, int k) -> const Poly<C>& {
    while (static_cast<int>(powers[i].size()) <= k) {
      powers[i].push_back(powers[i].back().mul(powers[i][1]));
    }
    return powers[i][k];
  };
  for (const auto& [mono, c] : p.terms()) {
    Poly<C> term = Poly<C>::constant(n, c, p.space());
    for (int i = 0; i < n; ++i) {
      if (mono[i]) term = term.mul(power(i, mono[i]));
    }
    result += term;
  }
  result.setSpace(p.space());
  return result;
}

}  // namespace

QPoly linearSubstitute(const QPoly& p, const QMatrix& m) {
  if (m.rows() != p.nvars() || m.cols() != p.nvars()) {
    throw DimensionError("linearSubstitute: matrix size does not match variable count");
  }
  if (sgn(m.det()) == 0) throw SingularMatrix("linearSubstitute: singular matrix");
  return substitute(p, m, [](const QMatrix& a, int i, int j) { return a(i, j); });
}

CPoly linearSubstitute(const CPoly& p, const CMatrix& m) {
  if (m.rows() != p.nvars() || m.cols() != p.nvars()) {
    throw DimensionError("linearSubstitute: matrix size does not match variable count");
  }
  if (m.fullPivLu().rank() < m.rows()) throw SingularMatrix("linearSubstitute: singular matrix");
  return substitute(p, m, [](const CMatrix& a, int i, int j) { return a(i, j); });
}

QPoly pointAction(const QMatrix& sigma, const QPoly& f) {
  return linearSubstitute(f, sigma.inverse());
}

CPoly pointAction(const CMatrix& sigma, const CPoly& f) {
  return linearSubstitute(f, CMatrix(sigma.inverse()));
}

QPoly dualAction(const QMatrix& sigma, const QPoly& delta) {
  return linearSubstitute(delta, sigma.transpose());
}

CPoly dualAction(const CMatrix& sigma, const CPoly& delta) {
  return linearSubstitute(delta, CMatrix(sigma.transpose()));
}

}  // namespace pdual
