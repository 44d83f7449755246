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

// Two-server PIR with O(n^{1/3}) communication via degree-3 polynomials and
// gradients over a prime field. In-process only; kept as the cost reference
// for the matching-vector schemes.
//
// Index i is embedded as a weight-3 point phi(i) in {0,1}^k with
// C(k,3) >= n, and F(x) = sum_i a_i x_a x_b x_c. Server j gets
// phi(tau) + t_j z and returns F and grad F there; with
// g(t) = F(phi(tau) + t z) and g'(t) = <grad F, z> the user solves the 4x4
// Taylor system for g(0) = a_tau.

#ifndef MVPIR_BASELINE_H_
#define MVPIR_BASELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mvpir/ring.h"
#include "mvpir/ring_matrix.h"
#include "mvpir/scheme.h"

namespace mvpir {

// Smallest k >= 3 with C(k, 3) >= n.
std::size_t baseline_dimension(std::size_t n);

class BaselineScheme {
 public:
  struct Answer {
    std::uint32_t value = 0;
    ZmVector gradient;
  };

  // cfg must be a baseline-cubic config. Throws CapacityError when
  // n > C(k, 3).
  BaselineScheme(std::span<const std::uint32_t> bits, std::size_t k,
                 SchemeConfig cfg = SchemeConfig::baseline_cubic());
  static BaselineScheme for_length(std::span<const std::uint32_t> bits,
                                   SchemeConfig cfg = SchemeConfig::baseline_cubic());

  std::size_t dimension() const { return k_; }
  std::size_t length() const { return bits_.size(); }
  std::uint32_t field() const { return cfg_.m; }
  const RingMatrix& matrix() const { return matrix_; }
  const std::array<std::uint32_t, 3>& embedding(std::size_t i) const { return support_[i]; }

  // phi(tau) + t_j z for each server j.
  std::vector<ZmVector> queries(std::size_t tau, std::span<const std::uint32_t> z) const;
  Answer answer(std::span<const std::uint32_t> point) const;
  std::uint32_t reconstruct(std::span<const std::uint32_t> z,
                            std::span<const Answer> answers) const;
  std::uint32_t retrieve(std::size_t tau, std::mt19937_64& rng) const;

  // One field element per byte (field <= 255).
  std::size_t query_bytes() const { return k_; }
  std::size_t answer_bytes() const { return k_ + 1; }

 private:
  SchemeConfig cfg_;
  std::size_t k_;
  std::vector<std::uint32_t> bits_;
  std::vector<std::array<std::uint32_t, 3>> support_;
  RingMatrix matrix_;
  std::vector<RingElem> adj_row_;
  std::uint32_t det_inverse_;
};

std::uint32_t baseline_roundtrip(std::span<const std::uint32_t> bits, std::size_t tau,
                                 std::mt19937_64& rng,
                                 SchemeConfig cfg = SchemeConfig::baseline_cubic());

}  // namespace mvpir

#endif  // MVPIR_BASELINE_H_
