// Run manifests: a JSON snapshot of everything needed to reproduce an
// emitted result file bit-exactly (tool version, full configuration, seeds,
// input digests), plus non-reproducible bookkeeping (wall-clock duration)
// that lives only in the manifest itself.
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "telag/errors.hpp"
#include "telag/version.hpp"

namespace telag {

// FNV-1a 64-bit digest, hex-encoded. Collision resistance is not a goal;
// this is a change detector for reproducibility bookkeeping.
inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

inline std::string fnv1a64_hex(std::uint64_t hash) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for digest");
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[1 << 15];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto n = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
    if (in.eof()) break;
  }
  return "fnv1a64:" + fnv1a64_hex(hash);
}

struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;  // full configuration snapshot
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> outputs;
  double wall_clock_ms = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json doc;
    doc["tool"] = std::string(kToolName);
    doc["version"] = std::string(kVersion);
    doc["command"] = command;
    doc["parameters"] = parameters;
    nlohmann::ordered_json ins = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : inputs)
      ins.push_back({{"path", path}, {"digest", digest}});
    doc["inputs"] = ins;
    doc["outputs"] = outputs;
    doc["wall_clock_ms"] = wall_clock_ms;
    return doc;
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest '" + path + "'");
    out << to_json().dump(2) << '\n';
  }
};

}  // namespace telag
