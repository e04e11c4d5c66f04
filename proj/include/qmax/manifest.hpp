#pragma once

/**
 * @file manifest.hpp
 * @brief Run manifests: command, full configuration and the SHA-256 of the
 *        canonical result, stored under a run directory by digest.
 */

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <openssl/evp.h>

#include "qmax/report.hpp"

namespace qmax {

inline constexpr const char* kVersion = "1.0.0";

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

/// UTC time as 2026-01-31T12:00:00Z.
inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string command;
  Json config;
  std::string version = kVersion;
  std::string started;
  std::string finished;
  std::string digest;  ///< sha256 of the canonical result JSON

  [[nodiscard]] Json to_json() const {
    return {{"command", command}, {"config", config},     {"version", version},
            {"started", started}, {"finished", finished}, {"digest", digest}};
  }

  static RunManifest from_json(const Json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.version = j.at("version").get<std::string>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    m.digest = j.at("digest").get<std::string>();
    return m;
  }
};

inline std::string result_digest(const Json& result) { return sha256_hex(canonical(result)); }

/// Writes <dir>/<digest>.json and returns its path.
inline std::filesystem::path write_manifest(const RunManifest& m, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (m.digest + ".json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << m.to_json().dump(2) << '\n';
  return path;
}

inline RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest " + path.string());
  return RunManifest::from_json(Json::parse(in));
}

}  // namespace qmax
