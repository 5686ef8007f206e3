#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "driftbench/error.hpp"

namespace driftbench {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one tool invocation. Two runs whose manifests agree in every
/// field except the timestamp produce identical outputs.
struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, std::string> input_digests;  // path -> SHA-256 hex
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  std::string timestamp;

  bool operator==(const RunManifest& o) const {
    return subcommand == o.subcommand && parameters == o.parameters && input_digests == o.input_digests &&
           seed == o.seed && tool_version == o.tool_version;
  }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const RunManifest& m) {
  return nlohmann::json{{"subcommand", m.subcommand},
                        {"parameters", m.parameters},
                        {"input_digests", m.input_digests},
                        {"seed", m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr)},
                        {"tool_version", m.tool_version},
                        {"timestamp", m.timestamp}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.parameters = j.at("parameters");
    m.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace driftbench
