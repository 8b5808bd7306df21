#pragma once

// On-disk cache of symbolic results: <dir>/<sha256(key)>.json.

#include <filesystem>
#include <optional>
#include <string>

#include "pdual/poly_json.hpp"

namespace pdual {

std::string sha256Hex(const std::string& data);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Key material is hashed; callers pass a canonical serialization.
  std::optional<QPoly> lookup(const std::string& key) const;
  void store(const std::string& key, const QPoly& result, const Json& metadata) const;
  std::filesystem::path pathFor(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace pdual
