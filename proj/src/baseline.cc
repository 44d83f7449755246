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

#include "mvpir/baseline.h"

#include "mvpir/errors.h"

namespace mvpir {

namespace {

std::size_t choose3(std::size_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

const SchemeConfig& checked(const SchemeConfig& cfg) {
  if (cfg.variant != Variant::kBaselineCubic) throw ParameterError("not a baseline config");
  cfg.validate();
  return cfg;
}

}  // namespace

std::size_t baseline_dimension(std::size_t n) {
  std::size_t k = 3;
  while (choose3(k) < n) ++k;
  return k;
}

BaselineScheme::BaselineScheme(std::span<const std::uint32_t> bits, std::size_t k,
                               SchemeConfig cfg)
    : cfg_(checked(cfg)),
      k_(k),
      bits_(bits.begin(), bits.end()),
      matrix_(build_matrix(cfg_)),
      adj_row_(adjugate_first_row(matrix_)),
      det_inverse_(0) {
  if (bits_.size() > choose3(k_)) {
    throw CapacityError("n = " + std::to_string(bits_.size()) + " exceeds C(" +
                            std::to_string(k_) + ", 3) = " + std::to_string(choose3(k_)),
                        choose3(k_));
  }
  for (std::uint32_t b : bits_) {
    if (b > 1) throw ParameterError("baseline database must hold bits");
  }
  // Weight-3 supports in lexicographic order.
  for (std::uint32_t a = 0; a < k_ && support_.size() < bits_.size(); ++a) {
    for (std::uint32_t b = a + 1; b < k_ && support_.size() < bits_.size(); ++b) {
      for (std::uint32_t c = b + 1; c < k_ && support_.size() < bits_.size(); ++c) {
        support_.push_back({a, b, c});
      }
    }
  }
  // det = (t2 - t1)^4, a unit since the field is prime and t1 != t2.
  const RingElem det = determinant(matrix_);
  det_inverse_ = mod_inverse(det.coeff(0), cfg_.m);
}

BaselineScheme BaselineScheme::for_length(std::span<const std::uint32_t> bits,
                                          SchemeConfig cfg) {
  return BaselineScheme(bits, baseline_dimension(bits.size()), std::move(cfg));
}

std::vector<ZmVector> BaselineScheme::queries(std::size_t tau,
                                              std::span<const std::uint32_t> z) const {
  if (tau >= bits_.size()) throw ParameterError("index out of range");
  if (z.size() != k_) throw ParameterError("randomness has wrong dimension");
  const std::uint32_t q = cfg_.m;
  std::vector<ZmVector> out;
  for (std::int64_t t : cfg_.t_values) {
    const std::uint32_t tm = mod_reduce(t, q);
    ZmVector point(k_);
    for (std::size_t c = 0; c < k_; ++c) point[c] = (tm * z[c]) % q;
    for (std::uint32_t c : support_[tau]) point[c] = (point[c] + 1) % q;
    out.push_back(std::move(point));
  }
  return out;
}

BaselineScheme::Answer BaselineScheme::answer(std::span<const std::uint32_t> point) const {
  if (point.size() != k_) throw ParameterError("query point has wrong dimension");
  const std::uint32_t q = cfg_.m;
  Answer ans{0, ZmVector(k_, 0)};
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] == 0) continue;
    const auto& [a, b, c] = support_[i];
    const std::uint32_t xa = point[a] % q, xb = point[b] % q, xc = point[c] % q;
    ans.value = (ans.value + xa * xb % q * xc) % q;
    ans.gradient[a] = (ans.gradient[a] + xb * xc) % q;
    ans.gradient[b] = (ans.gradient[b] + xa * xc) % q;
    ans.gradient[c] = (ans.gradient[c] + xa * xb) % q;
  }
  return ans;
}

std::uint32_t BaselineScheme::reconstruct(std::span<const std::uint32_t> z,
                                          std::span<const Answer> answers) const {
  if (answers.size() != 2) throw ProtocolError("baseline expects two answers");
  const std::uint32_t q = cfg_.m;
  std::vector<RingElem> b;
  for (const Answer& a : answers) {
    if (a.gradient.size() != k_) throw ProtocolError("gradient has wrong dimension");
    b.push_back(RingElem::constant(a.value, q, 1));
    b.push_back(RingElem::constant(inner_product_mod(a.gradient, z, q), q, 1));
  }
  const RingElem scaled = recover_scaled_first(adj_row_, b);
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(scaled.coeff(0)) * det_inverse_ % q);
}

std::uint32_t BaselineScheme::retrieve(std::size_t tau, std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> residue(0, cfg_.m - 1);
  ZmVector z(k_);
  for (auto& c : z) c = residue(rng);
  const auto points = queries(tau, z);
  std::vector<Answer> answers;
  for (const auto& p : points) answers.push_back(answer(p));
  return reconstruct(z, answers);
}

std::uint32_t baseline_roundtrip(std::span<const std::uint32_t> bits, std::size_t tau,
                                 std::mt19937_64& rng, SchemeConfig cfg) {
  return BaselineScheme::for_length(bits, std::move(cfg)).retrieve(tau, rng);
}

}  // namespace mvpir
