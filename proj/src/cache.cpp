#include "pdual/cache.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>

#include <openssl/evp.h>

#include "pdual/version.hpp"

namespace pdual {

std::string sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {
// Cache access is serialized within a process; writes go through a
// rename so concurrent processes never see a partial file.
std::mutex cacheMutex;
}  // namespace

std::filesystem::path ResultCache::pathFor(const std::string& key) const {
  return dir_ / (sha256Hex(key) + ".json");
}

std::optional<QPoly> ResultCache::lookup(const std::string& key) const {
  std::lock_guard lock(cacheMutex);
  const auto path = pathFor(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    Json j = readJsonFile(path);
    if (j.value("key", std::string()) != key) return std::nullopt;
    return qpolyFromJson(j.at("result"));
  } catch (const std::exception&) {
    // A corrupt entry is treated as a miss and overwritten later.
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const QPoly& result, const Json& metadata) const {
  std::lock_guard lock(cacheMutex);
  std::filesystem::create_directories(dir_);
  Json j;
  j["key"] = key;
  j["metadata"] = metadata;
  j["metadata"]["version"] = kVersion;
  const auto now = std::chrono::system_clock::now();
  j["metadata"]["created_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  j["result"] = toJson(result);
  const auto path = pathFor(key);
  auto tmp = path;
  tmp += ".tmp";
  writeJsonFile(tmp, j);
  std::filesystem::rename(tmp, path);
}

}  // namespace pdual
