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

// S-matching vector families: lists U = (u_1..u_n), V = (v_1..v_n) in Z_m^k
// with <u_i, v_i> = 0 and <u_i, v_j> in S for i != j.
//
// Text format (one record per line, whitespace separated):
//
//   mvf <m> <k> <n>
//   S <s_1> ... <s_|S|>
//   u <k residues>      (n lines)
//   v <k residues>      (n lines)

#ifndef MVPIR_MV_FAMILY_H_
#define MVPIR_MV_FAMILY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvpir/ring.h"

namespace mvpir {

struct MVFamily {
  std::uint32_t m = 0;
  std::size_t k = 0;
  std::vector<ZmVector> u;
  std::vector<ZmVector> v;
  // Sorted, distinct, nonzero residues.
  std::vector<std::uint32_t> s;

  std::size_t size() const { return u.size(); }
  bool in_s(std::uint32_t residue) const;

  bool operator==(const MVFamily&) const = default;
};

struct FamilyViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint32_t inner_product = 0;
};

std::uint32_t inner_product_mod(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b, std::uint32_t m);

// First pair (i, j) in row-major order breaking the matching property, or
// nullopt when the family is valid. Shape problems (wrong vector lengths,
// residues >= m, 0 in S) are reported as ParameterError.
std::optional<FamilyViolation> find_violation(const MVFamily& family);
bool validate_family(const MVFamily& family);

// {a in Z_m : a mod p in {0, 1} for every p} \ {0}, m = product of primes.
std::vector<std::uint32_t> crt_residue_set(std::span<const std::uint32_t> primes);

// Explicit family for m = p_1 ... p_r and S = crt_residue_set(primes): index i is a
// label tuple (x_1..x_r) in [k]^r and, modulo each p_t, u_i = e_{x_t} and
// v_i = 1 - e_{x_t}. Size k^r, dimension k.
MVFamily product_family(std::span<const std::uint32_t> primes, std::size_t k);

struct SearchOptions {
  std::uint64_t budget = 2'000'000;  // candidate draws
  std::size_t mixing_rounds = 0;     // 0 selects 4k
};

// Seeded randomized greedy search: draw candidate pairs (u, v) with
// <u, v> = 0 and keep each one compatible with everything kept so far.
// Candidates mix uniform draws with label-structured draws (see
// product_family) whenever m is squarefree, and the search restarts from
// empty after a long run of rejections. The result is then scrambled by
// seeded elementary transforms that preserve every inner product.
// Deterministic in `seed`; throws CapacityError when the budget runs out.
MVFamily search_family(std::uint32_t m, std::size_t k, std::span<const std::uint32_t> s,
                       std::size_t target_n, std::uint64_t seed,
                       const SearchOptions& options = {});

// First n pairs of a family (still a valid family).
MVFamily truncate_family(const MVFamily& family, std::size_t n);

void write_family(std::ostream& os, const MVFamily& family);
// Throws ParseError on malformed text and IntegrityError when the parsed
// family breaks the matching property.
MVFamily read_family(std::istream& is);
void save_family(const MVFamily& family, const std::filesystem::path& path);
MVFamily load_family(const std::filesystem::path& path);

// SHA-256 of the canonical text form; servers and clients compare it.
std::array<std::uint8_t, 32> family_digest(const MVFamily& family);

}  // namespace mvpir

#endif  // MVPIR_MV_FAMILY_H_
