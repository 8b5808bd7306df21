#pragma once

// Polynomial file format:
//   {"vars": n, "degree": d, "space": "point"|"dual",
//    "terms": [{"c": "p/q" | [re, im], "e": [..]}, ...]}
// Terms are written leading-first in graded-lex order; any order is read.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pdual/poly.hpp"

namespace pdual {

using Json = nlohmann::ordered_json;

Json toJson(const QPoly& p);
Json toJson(const CPoly& p);

/// Exact read; complex coefficients are an InputError.
QPoly qpolyFromJson(const Json& j);
/// Accepts both coefficient kinds (exact ones are promoted).
CPoly cpolyFromJson(const Json& j);
bool jsonHasComplexCoefficients(const Json& j);

Json readJsonFile(const std::filesystem::path& path);
void writeJsonFile(const std::filesystem::path& path, const Json& j);

/// Parses "p/q", "p" or a decimal literal such as "0.25" exactly.
Rational parseRational(const std::string& s);

}  // namespace pdual
