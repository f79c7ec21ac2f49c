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

#include "orlicz/report.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace orlicz;

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

namespace {

ExperimentReport sample_report(std::uint64_t seed) {
  ExperimentReport rep;
  rep.command = "norm";
  rep.config = {{"phi", {{"kind", "power"}, {"p", 3.0}}}, {"schema_version", 1}};
  rep.seed = seed;
  ReportRow row;
  row.op = "luxemburg_norm";
  row.params = {{"M", 4096}};
  row.values = {{"value", 1.25}};
  rep.add_row(std::move(row));
  return rep;
}

}  // namespace

TEST_CASE("report payload determinism") {
  const auto a = sample_report(7);
  const auto b = sample_report(7);
  CHECK(a.determinism_sha256() == b.determinism_sha256());

  const auto c = sample_report(8);
  CHECK(a.determinism_sha256() != c.determinism_sha256());

  // The hashed payload has no timestamp or thread count.
  const auto payload = a.payload();
  CHECK_FALSE(payload.contains("timestamp"));
  CHECK_FALSE(payload.contains("threads"));
  CHECK(payload.at("schema_version") == kSchemaVersion);
  CHECK(payload.at("code_version") == kCodeVersion);
}

TEST_CASE("csv escapes quotes and commas") {
  ExperimentReport rep;
  rep.command = "density";
  ReportRow row;
  row.op = "with\"quote";
  row.params = {{"note", "a,b"}};
  rep.add_row(std::move(row));
  const std::string csv = rep.csv();
  CHECK(csv.find("\"with\"\"quote\"") != std::string::npos);
  CHECK(csv.find("\"{\"\"note\"\":\"\"a,b\"\"}\"") != std::string::npos);
  CHECK(csv.rfind("op,params,values,diagnostics\n", 0) == 0);
}

TEST_CASE("write_outputs produces the three artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "orlicz_report_test";
  std::filesystem::remove_all(dir);
  const auto rep = sample_report(3);
  rep.write_outputs(dir, 4);

  REQUIRE(std::filesystem::exists(dir / "report.json"));
  REQUIRE(std::filesystem::exists(dir / "report.csv"));
  REQUIRE(std::filesystem::exists(dir / "determinism.sha256"));

  std::ifstream is(dir / "report.json");
  nlohmann::json full;
  is >> full;
  CHECK(full.contains("timestamp"));
  CHECK(full.at("threads") == 4);
  CHECK(full.at("rows").size() == 1);

  std::ifstream hs(dir / "determinism.sha256");
  std::string line;
  std::getline(hs, line);
  CHECK(line == rep.determinism_sha256());
  std::filesystem::remove_all(dir);
}
