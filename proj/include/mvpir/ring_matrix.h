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

#ifndef MVPIR_RING_MATRIX_H_
#define MVPIR_RING_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mvpir/ring.h"

namespace mvpir {

// Square n x n matrix over R_{m,r}.
//
// The ring has zero divisors, so nothing here divides: determinants and
// minors come from cofactor (Laplace) expansion, memoised over column subsets
// so an n x n determinant costs O(n 2^n) ring products.
class RingMatrix {
 public:
  RingMatrix(std::size_t n, std::uint32_t m, std::uint32_t r);

  static RingMatrix identity(std::size_t n, std::uint32_t m, std::uint32_t r);
  static RingMatrix scalar(std::size_t n, const RingElem& d);

  std::size_t size() const { return n_; }
  std::uint32_t modulus() const { return m_; }
  std::uint32_t order() const { return r_; }

  const RingElem& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, RingElem value);

  RingMatrix operator*(const RingMatrix& o) const;
  // M * a for a column vector a.
  std::vector<RingElem> apply(std::span<const RingElem> a) const;
  // lambda * M for a row vector lambda.
  std::vector<RingElem> apply_left(std::span<const RingElem> lambda) const;

  RingMatrix with_rows_swapped(std::size_t i, std::size_t j) const;

  bool operator==(const RingMatrix&) const = default;

 private:
  std::size_t n_;
  std::uint32_t m_;
  std::uint32_t r_;
  std::vector<RingElem> entries_;
};

// Throws ParameterError above 20 x 20.
RingElem determinant(const RingMatrix& mat);

// Classical adjoint: entry (i, j) is the (j, i) cofactor.
RingMatrix adjugate(const RingMatrix& mat);

// First row of adj(M).
std::vector<RingElem> adjugate_first_row(const RingMatrix& mat);

// Given b = M * a, returns det(M) * a_1 as the first entry of adj(M) * b.
RingElem recover_scaled_first(const RingMatrix& mat, std::span<const RingElem> b);
RingElem recover_scaled_first(std::span<const RingElem> adj_first_row,
                              std::span<const RingElem> b);

}  // namespace mvpir

#endif  // MVPIR_RING_MATRIX_H_
