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

#include "mvpir/ring_matrix.h"

#include <bit>

#include "mvpir/errors.h"

namespace mvpir {

namespace {

constexpr std::size_t kMaxDimension = 20;

// Determinant of the submatrix of `mat` picked out by `rows` x `cols`.
//
// Expands along the last selected row: with D[mask] the determinant of the
// first popcount(mask) selected rows restricted to the columns in mask,
// D[mask] = sum_{c in mask} (-1)^{#(mask above c)} M[row][c] D[mask \ c].
RingElem sub_determinant(const RingMatrix& mat, std::span<const std::size_t> rows,
                         std::span<const std::size_t> cols) {
  const std::size_t n = rows.size();
  const std::uint32_t m = mat.modulus();
  const std::uint32_t r = mat.order();
  if (n == 0) return RingElem::one(m, r);
  if (n > kMaxDimension) throw ParameterError("matrix dimension too large for cofactor expansion");

  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<RingElem> dp(full + 1, RingElem(m, r));
  dp[0] = RingElem::one(m, r);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t row = rows[std::popcount(mask) - 1];
    RingElem acc(m, r);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t bit = std::size_t{1} << c;
      if (!(mask & bit)) continue;
      const RingElem& entry = mat.at(row, cols[c]);
      if (entry.is_zero() || dp[mask ^ bit].is_zero()) continue;
      const int above = std::popcount(mask >> (c + 1));
      RingElem term = entry * dp[mask ^ bit];
      acc = (above % 2 == 0) ? acc + term : acc - term;
    }
    dp[mask] = std::move(acc);
  }
  return dp[full];
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> out;
  out.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

RingElem cofactor(const RingMatrix& mat, std::size_t i, std::size_t j) {
  const std::size_t n = mat.size();
  const auto rows = all_but(n, i);
  const auto cols = all_but(n, j);
  RingElem minor = sub_determinant(mat, rows, cols);
  return ((i + j) % 2 == 0) ? minor : -minor;
}

}  // namespace

RingMatrix::RingMatrix(std::size_t n, std::uint32_t m, std::uint32_t r)
    : n_(n), m_(m), r_(r), entries_(n * n, RingElem(m, r)) {
  if (n == 0) throw ParameterError("matrix dimension must be positive");
}

RingMatrix RingMatrix::identity(std::size_t n, std::uint32_t m, std::uint32_t r) {
  return scalar(n, RingElem::one(m, r));
}

RingMatrix RingMatrix::scalar(std::size_t n, const RingElem& d) {
  RingMatrix out(n, d.modulus(), d.order());
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, d);
  return out;
}

void RingMatrix::set(std::size_t i, std::size_t j, RingElem value) {
  if (value.modulus() != m_ || value.order() != r_) {
    throw ParameterError("matrix entry (m, r) mismatch");
  }
  entries_.at(i * n_ + j) = std::move(value);
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
  if (o.n_ != n_ || o.m_ != m_ || o.r_ != r_) throw ParameterError("matrix shape mismatch");
  RingMatrix out(n_, m_, r_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      RingElem acc(m_, r_);
      for (std::size_t l = 0; l < n_; ++l) acc += at(i, l) * o.at(l, j);
      out.set(i, j, std::move(acc));
    }
  }
  return out;
}

std::vector<RingElem> RingMatrix::apply(std::span<const RingElem> a) const {
  if (a.size() != n_) throw ParameterError("vector length does not match matrix");
  std::vector<RingElem> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    RingElem acc(m_, r_);
    for (std::size_t j = 0; j < n_; ++j) acc += at(i, j) * a[j];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<RingElem> RingMatrix::apply_left(std::span<const RingElem> lambda) const {
  if (lambda.size() != n_) throw ParameterError("vector length does not match matrix");
  std::vector<RingElem> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    RingElem acc(m_, r_);
    for (std::size_t i = 0; i < n_; ++i) acc += lambda[i] * at(i, j);
    out.push_back(std::move(acc));
  }
  return out;
}

RingMatrix RingMatrix::with_rows_swapped(std::size_t i, std::size_t j) const {
  RingMatrix out = *this;
  for (std::size_t c = 0; c < n_; ++c) {
    out.entries_[i * n_ + c] = at(j, c);
    out.entries_[j * n_ + c] = at(i, c);
  }
  return out;
}

RingElem determinant(const RingMatrix& mat) {
  std::vector<std::size_t> idx(mat.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return sub_determinant(mat, idx, idx);
}

RingMatrix adjugate(const RingMatrix& mat) {
  const std::size_t n = mat.size();
  RingMatrix out(n, mat.modulus(), mat.order());
  if (n == 1) {
    out.set(0, 0, RingElem::one(mat.modulus(), mat.order()));
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, cofactor(mat, j, i));
  }
  return out;
}

std::vector<RingElem> adjugate_first_row(const RingMatrix& mat) {
  const std::size_t n = mat.size();
  if (n == 1) return {RingElem::one(mat.modulus(), mat.order())};
  std::vector<RingElem> row;
  row.reserve(n);
  for (std::size_t j = 0; j < n; ++j) row.push_back(cofactor(mat, j, 0));
  return row;
}

RingElem recover_scaled_first(const RingMatrix& mat, std::span<const RingElem> b) {
  if (b.size() != mat.size()) throw ParameterError("vector length does not match matrix");
  return recover_scaled_first(adjugate_first_row(mat), b);
}

RingElem recover_scaled_first(std::span<const RingElem> adj_first_row,
                              std::span<const RingElem> b) {
  if (adj_first_row.size() != b.size() || b.empty()) {
    throw ParameterError("adjugate row and vector lengths differ");
  }
  RingElem acc(b[0].modulus(), b[0].order());
  for (std::size_t j = 0; j < b.size(); ++j) acc += adj_first_row[j] * b[j];
  return acc;
}

}  // namespace mvpir
