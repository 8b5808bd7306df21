#include "pdual/poly_json.hpp"

#include <fstream>
#include <sstream>

namespace pdual {

namespace {

const char* spaceName(Space s) { return s == Space::Dual ? "dual" : "point"; }

template <class C>
Json header(const Poly<C>& p) {
  Json j;
  j["vars"] = p.nvars();
  j["degree"] = p.degree();
  j["space"] = spaceName(p.space());
  return j;
}

struct Header {
  int vars;
  int degree;
  Space space;
};

Header readHeader(const Json& j) {
  try {
    Header h{j.at("vars").get<int>(), j.at("degree").get<int>(), Space::Point};
    const std::string s = j.value("space", std::string("point"));
    if (s == "dual") {
      h.space = Space::Dual;
    } else if (s != "point") {
      throw InputError("polynomial JSON: unknown space '" + s + "'");
    }
    if (h.vars < 1 || h.vars > kMaxVars || h.degree < 0) {
      throw InputError("polynomial JSON: bad vars/degree");
    }
    if (!j.at("terms").is_array()) throw InputError("polynomial JSON: terms must be an array");
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
}

Monomial readExponents(const Json& t, const Header& h) {
  const auto e = t.at("e").get<std::vector<int>>();
  if (static_cast<int>(e.size()) != h.vars) throw InputError("polynomial JSON: exponent length mismatch");
  Monomial m = Monomial::fromVector(e);
  if (m.degree() != h.degree) throw InputError("polynomial JSON: term degree differs from declared degree");
  return m;
}

template <class C>
Poly<C> readTerms(const Json& j, auto readCoeff) {
  const Header h = readHeader(j);
  Poly<C> p(h.vars, h.degree, h.space);
  try {
    for (const auto& t : j.at("terms")) {
      p.addTerm(readExponents(t, h), readCoeff(t.at("c")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
  if (p.isZero()) p = Poly<C>(h.vars, h.degree, h.space);
  return p;
}

}  // namespace

Rational parseRational(const std::string& s) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t.empty()) throw InputError("empty rational literal");
  try {
    const auto dot = t.find('.');
    if (dot != std::string::npos && t.find('/') == std::string::npos) {
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      const std::size_t places = t.size() - dot - 1;
      mpz_class num(digits == "-" || digits.empty() ? "0" : digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    Rational r(t, 10);
    if (sgn(r.get_den()) == 0) throw InputError("rational literal with zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational literal: " + s);
  }
}

Json toJson(const QPoly& p) {
  Json j = header(p);
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"c", c.get_str()}, {"e", m.toVector()}});
  }
  j["terms"] = std::move(terms);
  return j;
}

Json toJson(const CPoly& p) {
  Json j = header(p);
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"c", {c.real(), c.imag()}}, {"e", m.toVector()}});
  }
  j["terms"] = std::move(terms);
  return j;
}

bool jsonHasComplexCoefficients(const Json& j) {
  if (!j.contains("terms") || !j["terms"].is_array()) return false;
  for (const auto& t : j["terms"]) {
    if (t.contains("c") && t["c"].is_array()) return true;
  }
  return false;
}

QPoly qpolyFromJson(const Json& j) {
  return readTerms<Rational>(j, [](const Json& c) -> Rational {
    if (c.is_string()) return parseRational(c.get<std::string>());
    if (c.is_number_integer()) return Rational(c.get<long>());
    throw InputError("polynomial JSON: exact coefficient must be a \"p/q\" string or integer");
  });
}

CPoly cpolyFromJson(const Json& j) {
  return readTerms<Complex>(j, [](const Json& c) -> Complex {
    if (c.is_array() && c.size() == 2) return {c[0].get<double>(), c[1].get<double>()};
    if (c.is_string()) return {parseRational(c.get<std::string>()).get_d(), 0.0};
    if (c.is_number()) return {c.get<double>(), 0.0};
    throw InputError("polynomial JSON: malformed coefficient");
  });
}

Json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void writeJsonFile(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace pdual
