/*
 * Copyright 2026 The mvpir Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MVPIR_CLI_SELFTEST_H_
#define MVPIR_CLI_SELFTEST_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mvpir::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Algebraic identities plus a TCP loopback retrieval. When `family_path` is
// set the file is loaded and validated as an extra check.
std::vector<CheckResult> run_selftest(
    const std::optional<std::filesystem::path>& family_path = std::nullopt);

// One "PASS name: detail" / "FAIL ..." line per check; true iff all passed.
bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace mvpir::cli

#endif  // MVPIR_CLI_SELFTEST_H_
