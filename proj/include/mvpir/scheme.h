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

// Matching-vector PIR: query generation, server answers and recovery.
//
// The user picks z uniformly in Z_m^k and sends q_i = z + t_i v_tau to server
// i. Each server answers with F, F^(1) (and F^(2) for the second-order
// variant) at g^{q_i}. Restricted to the line, F becomes
// g(T) = sum_l c_l T^l with c_0 = a_tau g^{<u_tau, z>}, and the answers give
// g and its derivatives at T = g^{t_i}: M * (c_l) = b. Recovery either
// multiplies b by the first row of adj(M) (two servers) or by a vector lambda
// with lambda * M = (mu, 0, ..., 0) (2^{r-1} servers).

#ifndef MVPIR_SCHEME_H_
#define MVPIR_SCHEME_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "mvpir/encoder.h"
#include "mvpir/mv_family.h"
#include "mvpir/ring.h"
#include "mvpir/ring_matrix.h"

namespace mvpir {

// Values double as wire scheme ids.
enum class Variant : std::uint8_t {
  kBaselineCubic = 0,
  kMv2Server = 1,
  kMv2ServerHomZ6 = 2,
  kMv2ServerHomF3 = 3,
  kMv2ServerOrder2 = 4,
  kMvKServer = 5,
};

std::string_view variant_name(Variant v);
// Throws ParameterError for unknown names.
Variant parse_variant(std::string_view name);
Variant variant_from_id(std::uint8_t id);
inline std::uint8_t scheme_id(Variant v) { return static_cast<std::uint8_t>(v); }

struct SchemeConfig {
  Variant variant = Variant::kMv2Server;
  std::uint32_t m = 6;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> s;
  std::size_t servers = 2;
  std::vector<std::int64_t> t_values;

  static SchemeConfig mv_2server();
  // target 6: g -> -1 over Z_6; target 3: g -> -1 over F_3.
  static SchemeConfig mv_2server_hom(std::uint32_t target);
  static SchemeConfig mv_2server_order2();
  static SchemeConfig mv_kserver(std::span<const std::uint32_t> primes);
  // Baseline over the prime field F_field with evaluation points t1, t2.
  static SchemeConfig baseline_cubic(std::uint32_t field = 7, std::int64_t t1 = 1,
                                     std::int64_t t2 = 2);
  // Defaults for a variant; `primes` only matters for mv-kserver.
  static SchemeConfig for_variant(Variant v, std::span<const std::uint32_t> primes = {});

  // Throws ParameterError when the fields are inconsistent.
  void validate() const;

  bool needs_f2() const { return variant == Variant::kMv2ServerOrder2; }
  std::size_t derivative_order() const { return needs_f2() ? 2 : 1; }
  bool is_homomorphic() const;
  // Image of g used by the homomorphic variants.
  std::optional<ZmScalar> gamma_image() const;
  // Ring the answers live in: R_{m,m}, or R_{t,1} = Z_t for hom variants.
  std::uint32_t answer_modulus() const;
  std::uint32_t answer_order() const;
  // Symbols recoverable per index: 2 for the bit schemes, m for mv-kserver.
  std::uint32_t alphabet() const;
  // Column exponents l in {0} u S.
  std::vector<std::uint32_t> column_exponents() const;
};

// Throws ParameterError unless the family fits the configuration
// (same modulus, its S contained in the scheme's S).
void check_family(const SchemeConfig& cfg, const MVFamily& family);

struct QueryState {
  std::size_t tau = 0;
  ZmVector z;
  // q_i = z + t_i v_tau mod m, one per server.
  std::vector<ZmVector> queries;
};

QueryState query_from_randomness(const SchemeConfig& cfg, const MVFamily& family,
                                 std::size_t tau, ZmVector z);
QueryState query_gen(const SchemeConfig& cfg, const MVFamily& family, std::size_t tau,
                     std::mt19937_64& rng);

// Depends only on (cfg, db, q).
AnswerBundle server_answer(const SchemeConfig& cfg, const EncodedDatabase& db,
                           std::span<const std::uint32_t> q);

// Interpolation matrix: rows (g, g^(1)[, g^(2)]) at each t_i, columns l in
// {0} u S, entry l^d g^{t_i l}. For hom variants the entrywise image; for the
// baseline the 4x4 Taylor matrix over F_field.
RingMatrix build_matrix(const SchemeConfig& cfg);

// The right-hand side b = (g(g^{t_1}), g^(1)(g^{t_1}), ...) from the answers.
std::vector<RingElem> interpolation_values(const SchemeConfig& cfg, const MVFamily& family,
                                           const QueryState& state,
                                           std::span<const AnswerBundle> answers);

struct LambdaVector {
  // (alpha_1, beta_1, ..., alpha_q, beta_q).
  std::vector<RingElem> entries;
  RingElem mu;
  // f(x) = sum_i alpha_i x^{i-1}.
  RingPoly f;
};

// Throws InternalError if any identity of the construction fails.
LambdaVector lambda_vector(const SchemeConfig& cfg);

std::uint32_t reconstruct_2server(const SchemeConfig& cfg, const MVFamily& family,
                                  std::span<const RingElem> adj_first_row,
                                  const QueryState& state,
                                  std::span<const AnswerBundle> answers);
std::uint32_t reconstruct_order2(const SchemeConfig& cfg, const MVFamily& family,
                                 std::span<const RingElem> adj_first_row,
                                 const QueryState& state,
                                 std::span<const AnswerBundle> answers);
std::uint32_t reconstruct_kserver(const SchemeConfig& cfg, const MVFamily& family,
                                  const LambdaVector& lambda, const QueryState& state,
                                  std::span<const AnswerBundle> answers);

// A configured scheme with its database-independent precomputation (matrix,
// first adjugate row, lambda). Immutable and shareable across threads.
class Scheme {
 public:
  Scheme(SchemeConfig cfg, MVFamily family);

  const SchemeConfig& config() const { return cfg_; }
  const MVFamily& family() const { return family_; }
  const RingMatrix& matrix() const { return matrix_; }
  const RingElem& matrix_determinant() const { return det_; }
  const std::vector<RingElem>& adjugate_row() const { return adj_row_; }
  const std::optional<LambdaVector>& lambda() const { return lambda_; }

  QueryState query(std::size_t tau, std::mt19937_64& rng) const;
  QueryState query_with(std::size_t tau, ZmVector z) const;
  AnswerBundle answer(const EncodedDatabase& db, std::span<const std::uint32_t> q) const;
  std::uint32_t reconstruct(const QueryState& state, std::span<const AnswerBundle> answers) const;

  // Encodes against this scheme's family after checking every symbol is
  // below alphabet().
  EncodedDatabase encode_database(std::span<const std::uint32_t> symbols) const;

  // Full protocol run without a network.
  std::uint32_t retrieve_local(const EncodedDatabase& db, std::size_t tau,
                               std::mt19937_64& rng) const;

  std::size_t query_bytes() const { return family_.k; }
  std::size_t answer_bytes() const;

 private:
  SchemeConfig cfg_;
  MVFamily family_;
  RingMatrix matrix_;
  RingElem det_;
  std::vector<RingElem> adj_row_;
  std::optional<LambdaVector> lambda_;
};

}  // namespace mvpir

#endif  // MVPIR_SCHEME_H_
