#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pdual/group.hpp"

namespace pdual::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parseDouble(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("bad number '" + s + "' in " + what);
  }
}

long parseLong(const std::string& s, const std::string& what) {
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InputError("bad integer '" + s + "' in " + what);
  return v;
}

Complex parseEntry(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  if (e.is_string()) return {parseRational(e.get<std::string>()).get_d(), 0.0};
  throw InputError("sigma entry must be a number, \"p/q\" or [re, im]");
}

}  // namespace

std::vector<long> parseIntList(const std::string& s) {
  std::vector<long> out;
  for (const auto& x : split(s, ',')) out.push_back(parseLong(x, "'" + s + "'"));
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

std::vector<double> parseTGrid(const std::string& s) {
  std::vector<double> out;
  for (const auto& x : split(s, ',')) out.push_back(parseDouble(x, "t-grid"));
  sweepTowardZero(out);
  return out;
}

SigmaFamilySpec SigmaFamilySpec::parse(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  SigmaFamilySpec spec;
  if (kind == "explicit") {
    if (rest.empty()) throw InputError("explicit sigma family needs a file");
    spec.kind = Kind::Explicit;
    spec.file = rest;
    return spec;
  }
  if (kind == "diagonal") {
    spec.kind = Kind::Diagonal;
    spec.m = parseIntList(rest);
    OneParamSubgroup check(spec.m);
    if (check.dim() != 3) throw InputError("diagonal sigma family needs three exponents");
    return spec;
  }
  if (kind == "random-sl3" || kind == "random-gl3") {
    spec.kind = kind == "random-sl3" ? Kind::RandomSL3 : Kind::RandomGL3;
    if (spec.kind == Kind::RandomGL3) spec.count = 10;
    for (const auto& kv : rest.empty() ? std::vector<std::string>{} : split(rest, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InputError("sigma family option '" + kv + "' is not key=value");
      const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
      if (k == "seed") {
        spec.seed = static_cast<std::uint64_t>(parseLong(v, s));
      } else if (k == "count") {
        spec.count = static_cast<int>(parseLong(v, s));
      } else if (k == "spread" && spec.kind == Kind::RandomSL3) {
        spec.spread = parseDouble(v, s);
      } else {
        throw InputError("unknown sigma family option '" + k + "'");
      }
    }
    if (spec.count < 1) throw InputError("sigma family count must be positive");
    if (!(spec.spread > 0)) throw InputError("sigma family spread must be positive");
    return spec;
  }
  throw InputError("unknown sigma family '" + s + "'");
}

std::string SigmaFamilySpec::describe() const {
  switch (kind) {
    case Kind::Explicit:
      return "explicit:" + file.string();
    case Kind::Diagonal: {
      std::string s = "diagonal:";
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
      return s;
    }
    case Kind::RandomSL3:
      return "random-sl3:seed=" + std::to_string(seed) + ",count=" + std::to_string(count) +
             ",spread=" + Json(spread).dump();
    case Kind::RandomGL3:
      return "random-gl3:seed=" + std::to_string(seed) + ",count=" + std::to_string(count);
  }
  return {};
}

std::vector<NamedSigma> SigmaFamilySpec::materialize(bool sl, const std::vector<double>& tGrid) const {
  std::vector<NamedSigma> out;
  switch (kind) {
    case Kind::RandomSL3:
      return randomSL3Family(seed, count, spread);
    case Kind::RandomGL3: {
      std::mt19937_64 rng(seed);
      for (int k = 0; k < count; ++k) out.push_back({"gl-" + std::to_string(k), randomGL3(rng)});
      break;
    }
    case Kind::Diagonal: {
      const OneParamSubgroup l(m);
      for (double t : tGrid) out.push_back({"t=" + Json(t).dump(), l.at(t)});
      break;
    }
    case Kind::Explicit: {
      // {"sigmas": [{"id": "...", "matrix": [[..3..], [..], [..]]}, ...]}
      const Json j = readJsonFile(file);
      if (!j.contains("sigmas") || !j["sigmas"].is_array() || j["sigmas"].empty())
        throw InputError(file.string() + ": expected a non-empty \"sigmas\" array");
      for (const auto& e : j["sigmas"]) {
        const Json& mat = e.at("matrix");
        if (!mat.is_array() || mat.size() != 3) throw InputError(file.string() + ": matrices must be 3×3");
        CMatrix s(3, 3);
        for (int i = 0; i < 3; ++i) {
          if (!mat[i].is_array() || mat[i].size() != 3) throw InputError(file.string() + ": matrices must be 3×3");
          for (int k = 0; k < 3; ++k) s(i, k) = parseEntry(mat[i][k]);
        }
        const std::string id = e.contains("id") ? e["id"].get<std::string>() : "sigma-" + std::to_string(out.size());
        out.push_back({id, s});
      }
      break;
    }
  }
  for (auto& s : out) {
    const Complex det = s.sigma.determinant();
    if (std::abs(det) < 1e-300) throw SingularMatrix("sigma '" + s.id + "' is singular");
    if (sl && kind != Kind::Diagonal) s.sigma /= std::pow(det, 1.0 / 3.0);
  }
  return out;
}

Json RunConfig::toJson() const {
  Json j;
  j["command"] = command;
  j["curve"] = curve;
  j["resolution"] = resolution;
  j["seed"] = seed;
  j["sigma"] = sigma ? Json(*sigma) : Json(nullptr);
  j["lambda"] = lambda;
  j["t_grid"] = tGrid;
  j["out"] = out.string();
  j["cache"] = cache ? Json(cache->string()) : Json(nullptr);
  j["which"] = which;
  j["target"] = target;
  j["degree"] = degree;
  j["inclusion"] = inclusion ? Json(*inclusion) : Json(nullptr);
  j["points"] = points;
  return j;
}

void applyToleranceOverrides(Tolerances& tol, const std::string& spec) {
  for (const auto& kv : split(spec, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("tolerance '" + kv + "' is not key=value");
    const std::string k = kv.substr(0, eq);
    const double v = parseDouble(kv.substr(eq + 1), "tolerance");
    if (!(v > 0)) throw InputError("tolerance '" + k + "' must be positive");
    if (k == "ddbar") tol.ddbar = v;
    else if (k == "spread_ratio") tol.spreadRatio = v;
    else if (k == "signal_to_error") tol.signalToError = v;
    else if (k == "slope") tol.slope = v;
    else if (k == "linear_dependence") tol.linearDependence = v;
    else if (k == "stability") tol.stability = v;
    else throw InputError("unknown tolerance '" + k + "'");
  }
}

void applyConfigFile(RunConfig& cfg, const std::filesystem::path& path) {
  const Json j = readJsonFile(path);
  if (!j.is_object()) throw InputError(path.string() + ": config must be a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "curve") cfg.curve = v.get<std::string>();
      else if (k == "resolution") cfg.resolution = v.get<int>();
      else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (k == "sigma") cfg.sigma = v.get<std::string>();
      else if (k == "lambda") cfg.lambda = v.get<std::string>();
      else if (k == "t_grid") cfg.tGrid = v.get<std::vector<double>>();
      else if (k == "tolerance") applyToleranceOverrides(cfg.tolerances, v.get<std::string>());
      else if (k == "out") cfg.out = v.get<std::string>();
      else if (k == "cache") cfg.cache = v.get<std::string>();
      else if (k == "which") cfg.which = v.get<std::string>();
      else if (k == "target") cfg.target = v.get<std::string>();
      else if (k == "degree") cfg.degree = v.get<int>();
      else if (k == "inclusion") cfg.inclusion = v.get<std::string>();
      else if (k == "points") cfg.points = v.get<int>();
      else throw InputError(path.string() + ": unknown config key '" + k + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

QPoly loadCurve(const std::string& spec) {
  if (spec.empty()) throw InputError("no curve given (--curve)");
  if (spec == "veronese") {
    const QPoly z0 = QPoly::variable(3, 0), z1 = QPoly::variable(3, 1), z2 = QPoly::variable(3, 2);
    return z0 * z2 - z1 * z1;
  }
  if (spec.rfind("fermat:", 0) == 0) {
    const long d = parseLong(spec.substr(7), spec);
    if (d < 1) throw InputError("fermat degree must be positive");
    QPoly f(3, static_cast<int>(d));
    for (int i = 0; i < 3; ++i) f += QPoly::variable(3, i).pow(static_cast<int>(d));
    return f;
  }
  const Json j = readJsonFile(spec);
  QPoly f = qpolyFromJson(j);
  if (f.nvars() != 3) throw InputError(spec + ": a plane curve needs 3 variables");
  if (f.space() != Space::Point) throw InputError(spec + ": curve must be in point variables");
  return f;
}

}  // namespace pdual::cli
