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

#ifndef MVPIR_CLI_BENCH_H_
#define MVPIR_CLI_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mvpir/scheme.h"

namespace mvpir::cli {

struct BenchRow {
  Variant variant = Variant::kMv2Server;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t q = 0;
  // Query plus answer bodies summed over servers.
  std::size_t bytes_total = 0;
  double wall_ms = 0.0;
};

struct BenchOptions {
  std::uint64_t seed = 1;
  // 0 picks the smallest dimension that fits n.
  std::size_t fixed_k = 0;
  // Primes for mv-kserver.
  std::vector<std::uint32_t> kserver_primes = {2, 3, 5};
  // Retrievals per point; every one is checked against the database.
  std::size_t trials = 4;
  // Record wall-clock time. Off by default so the CSV is byte-stable.
  bool timing = false;
};

// Runs each (variant, n) point through the full query/answer/reconstruct
// path with real frame encoding. Throws InternalError on a wrong symbol.
std::vector<BenchRow> run_bench(std::span<const Variant> variants,
                                std::span<const std::size_t> n_list, const BenchOptions& options);

inline constexpr const char* kBenchCsvHeader = "variant,n,k,q,bytes_total,wall_ms";

void write_csv(std::ostream& os, std::span<const BenchRow> rows);

}  // namespace mvpir::cli

#endif  // MVPIR_CLI_BENCH_H_
