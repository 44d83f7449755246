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

// The database as the sparse polynomial F(x) = sum_i a_i x^{u_i} over R_{m,m}
// and its evaluations at points g^w = (g^{w_1}, ..., g^{w_k}).
//
// F^(1) multiplies each monomial's coefficient by its exponent vector and
// F^(2) by the outer square of it. At a point g^w every monomial collapses to
// g^{<w, u_i> mod m}, so evaluations only ever touch one ring coefficient per
// term and stay integer-only.

#ifndef MVPIR_ENCODER_H_
#define MVPIR_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "mvpir/mv_family.h"
#include "mvpir/ring.h"
#include "mvpir/ring_matrix.h"

namespace mvpir {

struct Term {
  std::uint32_t coeff = 0;
  ZmVector exponent;
  bool operator==(const Term&) const = default;
};

class EncodedDatabase {
 public:
  EncodedDatabase(std::uint32_t m, std::size_t k, std::size_t n, std::vector<Term> terms);

  std::uint32_t modulus() const { return m_; }
  // Ring order; always equal to the modulus here.
  std::uint32_t order() const { return m_; }
  std::size_t dimension() const { return k_; }
  // Database length (including zero symbols).
  std::size_t length() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::uint32_t m_;
  std::size_t k_;
  std::size_t n_;
  std::vector<Term> terms_;
};

// Zero symbols are dropped. Symbols must be residues mod family.m and there
// may be at most family.size() of them.
EncodedDatabase encode(std::span<const std::uint32_t> symbols, const MVFamily& family);

RingElem eval_f(const EncodedDatabase& db, std::span<const std::uint32_t> w);
std::vector<RingElem> eval_f1(const EncodedDatabase& db, std::span<const std::uint32_t> w);
RingMatrix eval_f2(const EncodedDatabase& db, std::span<const std::uint32_t> w);

// One server's reply: F, F^(1) and, for the second-order variant, F^(2)
// evaluated at the same point.
struct AnswerBundle {
  RingElem f0;
  std::vector<RingElem> f1;
  std::optional<RingMatrix> f2;

  // Concatenated ring-element bytes: f0, f1[0..k), then f2 row-major.
  std::vector<std::uint8_t> serialize() const;
  static AnswerBundle deserialize(std::span<const std::uint8_t> bytes, std::uint32_t m,
                                  std::uint32_t r, std::size_t k, bool with_f2);
  static std::size_t serialized_size(std::uint32_t r, std::size_t k, bool with_f2);

  bool operator==(const AnswerBundle&) const = default;
};

// All requested evaluations in a single pass over the terms.
AnswerBundle evaluate_bundle(const EncodedDatabase& db, std::span<const std::uint32_t> w,
                             bool with_f2);

// Raw database files: one symbol per byte.
std::vector<std::uint32_t> load_database(const std::filesystem::path& path);
void save_database(std::span<const std::uint32_t> symbols, const std::filesystem::path& path);

}  // namespace mvpir

#endif  // MVPIR_ENCODER_H_
