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

#include "mvpir/cli/bench.h"

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>

#include "mvpir/baseline.h"
#include "mvpir/errors.h"
#include "mvpir/mv_family.h"
#include "mvpir/net/session.h"
#include "mvpir/net/wire.h"

namespace mvpir::cli {

namespace {

std::size_t smallest_product_dimension(std::size_t n, std::size_t factors) {
  for (std::size_t k = 1;; ++k) {
    std::size_t cap = 1;
    for (std::size_t i = 0; i < factors && cap < n; ++i) cap *= k;
    if (cap >= n) return k;
  }
}

std::vector<std::uint32_t> random_symbols(std::size_t n, std::uint32_t alphabet,
                                          std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, alphabet - 1);
  std::vector<std::uint32_t> out(n);
  for (auto& s : out) s = dist(rng);
  return out;
}

BenchRow bench_baseline(std::size_t n, const BenchOptions& options, std::mt19937_64& rng) {
  const std::size_t k = options.fixed_k != 0 ? options.fixed_k : baseline_dimension(n);
  const auto bits = random_symbols(n, 2, rng);
  BaselineScheme scheme(bits, k);
  BenchRow row{Variant::kBaselineCubic, n, k, 2, 0, 0.0};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t tau = pick(rng);
    if (scheme.retrieve(tau, rng) != bits[tau]) {
      throw InternalError("baseline retrieved a wrong bit at n=" + std::to_string(n));
    }
  }
  row.bytes_total = 2 * (scheme.query_bytes() + scheme.answer_bytes());
  return row;
}

BenchRow bench_mv(Variant variant, std::size_t n, const BenchOptions& options,
                  std::mt19937_64& rng) {
  SchemeConfig cfg = SchemeConfig::for_variant(variant, options.kserver_primes);
  const std::size_t k = options.fixed_k != 0
                            ? options.fixed_k
                            : smallest_product_dimension(n, cfg.primes.size());
  MVFamily full = product_family(cfg.primes, k);
  if (full.size() < n) {
    throw CapacityError("dimension " + std::to_string(k) + " holds only " +
                            std::to_string(full.size()) + " indices",
                        full.size());
  }
  auto scheme = std::make_shared<Scheme>(cfg, truncate_family(full, n));
  const auto symbols = random_symbols(n, cfg.alphabet(), rng);
  auto ctx = std::make_shared<const net::ServingContext>(*scheme, scheme->encode_database(symbols));

  BenchRow row{variant, n, k, cfg.servers, 0, 0.0};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t tau = pick(rng);
    QueryState state = scheme->query(tau, rng);
    std::vector<AnswerBundle> answers;
    std::size_t bytes = 0;
    for (const ZmVector& q : state.queries) {
      net::Frame frame;
      frame.type = net::MessageType::kQuery;
      frame.scheme_id = scheme_id(variant);
      frame.body.assign(q.begin(), q.end());
      net::ServerSession session(ctx);
      auto step = session.feed(net::encode_frame(frame));
      if (step.replies.size() != 1 || step.replies[0].type != net::MessageType::kAnswer) {
        std::string why = step.replies.empty() ? "no reply" : "";
        if (!step.replies.empty() && step.replies[0].type == net::MessageType::kError) {
          why = net::decode_error(step.replies[0].body).message;
        }
        throw InternalError("loopback server did not answer: " + why);
      }
      const auto& body = step.replies[0].body;
      bytes += frame.body.size() + body.size();
      answers.push_back(AnswerBundle::deserialize(body, cfg.answer_modulus(), cfg.answer_order(),
                                                  k, cfg.needs_f2()));
    }
    if (scheme->reconstruct(state, answers) != symbols[tau]) {
      throw InternalError(std::string(variant_name(variant)) + " retrieved a wrong symbol at n=" +
                          std::to_string(n));
    }
    row.bytes_total = bytes;
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(std::span<const Variant> variants,
                                std::span<const std::size_t> n_list, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (Variant variant : variants) {
    for (std::size_t n : n_list) {
      if (n == 0) throw ParameterError("n must be positive");
      // Seeded per point so rows do not depend on the order of the lists.
      std::mt19937_64 rng(options.seed ^ (std::uint64_t{scheme_id(variant)} << 56) ^ n);
      const auto start = std::chrono::steady_clock::now();
      BenchRow row = variant == Variant::kBaselineCubic ? bench_baseline(n, options, rng)
                                                        : bench_mv(variant, n, options, rng);
      if (options.timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const BenchRow> rows) {
  os << kBenchCsvHeader << '\n';
  char ms[32];
  for (const BenchRow& r : rows) {
    std::snprintf(ms, sizeof(ms), "%.3f", r.wall_ms);
    os << variant_name(r.variant) << ',' << r.n << ',' << r.k << ',' << r.q << ','
       << r.bytes_total << ',' << ms << '\n';
  }
}

}  // namespace mvpir::cli
