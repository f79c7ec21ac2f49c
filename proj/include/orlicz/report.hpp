// Copyright 2026 The orlicz-lambda Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace orlicz {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "orlicz-lambda 0.1.0";

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: EVP_Digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

struct ReportRow {
  std::string op;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
};

/// Seeded-run record. The JSON payload is deterministic for a fixed
/// (config, seed): rows are appended in a fixed order and all statistics are
/// folded sequentially by index, never in thread-completion order. The
/// determinism hash covers everything except the timestamp and the worker
/// count, which are environment, not results.
struct ExperimentReport {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;

  void add_row(ReportRow row) { rows.push_back(std::move(row)); }

  nlohmann::json payload() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
      rows_json.push_back({{"op", r.op},
                           {"params", r.params},
                           {"values", r.values},
                           {"diagnostics", r.diagnostics}});
    }
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"code_version", kCodeVersion},
                          {"command", command},
                          {"config", config},
                          {"seed", seed},
                          {"rows", std::move(rows_json)},
                          {"warnings", warnings}};
  }

  std::string determinism_sha256() const { return sha256_hex(payload().dump()); }

  std::string csv() const {
    std::string out = "op,params,values,diagnostics\n";
    const auto cell = [](const nlohmann::json& j) {
      std::string s = j.is_string() ? j.get<std::string>() : j.dump();
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
      }
      quoted += '"';
      return quoted;
    };
    for (const auto& r : rows) {
      out += cell(r.op) + "," + cell(r.params) + "," + cell(r.values) + "," +
             cell(r.diagnostics) + "\n";
    }
    return out;
  }

  /// Writes report.json (timestamped), report.csv and determinism.sha256.
  void write_outputs(const std::filesystem::path& dir, unsigned threads_used) const {
    std::filesystem::create_directories(dir);
    nlohmann::json full = payload();
    full["timestamp"] = iso_timestamp();
    full["threads"] = threads_used;
    {
      std::ofstream os(dir / "report.json");
      os << full.dump(2) << "\n";
    }
    {
      std::ofstream os(dir / "report.csv");
      os << csv();
    }
    {
      std::ofstream os(dir / "determinism.sha256");
      os << determinism_sha256() << "\n";
    }
  }

  static std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
  }
};

}  // namespace orlicz
