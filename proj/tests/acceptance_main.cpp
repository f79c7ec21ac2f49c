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

// Acceptance gate: runs every criterion at its stated scale and tolerance,
// prints one pass/fail line each, and exits nonzero on any failure.
//
//   acceptance [fast|full]    (default: full)

#include <cstdio>
#include <cstring>
#include <string>

#include "orlicz/acceptance.hpp"

int main(int argc, char** argv) {
  std::string suite = "full";
  if (argc > 1) suite = argv[1];
  if (suite != "fast" && suite != "full") {
    std::fprintf(stderr, "usage: acceptance [fast|full]\n");
    return 1;
  }
  std::printf("acceptance suite: %s\n", suite.c_str());
  const auto results = orlicz::run_acceptance(suite);
  const int failures = orlicz::print_acceptance(results);
  return failures == 0 ? 0 : 1;
}
