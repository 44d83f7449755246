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

// Arithmetic in Z_m and in the cyclic group ring R_{m,r} = Z_m[g]/(g^r - 1).
//
// Moduli are runtime values in [2, 255] so that every coefficient fits in one
// byte; that byte layout is also the wire serialization of a ring element.
// All values are immutable once built and coefficients are always stored as
// canonical residues, so equality and the zero test are plain comparisons.

#ifndef MVPIR_RING_H_
#define MVPIR_RING_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mvpir {

inline constexpr std::uint32_t kMaxModulus = 255;

// A vector of residues in Z_m. The modulus is carried by the context
// (family, scheme) rather than by the vector.
using ZmVector = std::vector<std::uint32_t>;

// Throws ParameterError unless 2 <= m <= kMaxModulus.
void check_modulus(std::uint32_t m);

// Canonical residue of `value` modulo m, for any sign of value.
std::uint32_t mod_reduce(std::int64_t value, std::uint32_t m);

// Inverse of `a` modulo m; throws ParameterError when gcd(a, m) != 1.
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m);

// Unique x in [0, prod moduli) with x = residues[i] mod moduli[i].
// Moduli must be pairwise coprime.
std::uint64_t crt_combine(std::span<const std::uint32_t> residues,
                          std::span<const std::uint32_t> moduli);

// Distinct prime factors of n in increasing order.
std::vector<std::uint32_t> prime_factors(std::uint32_t n);
bool is_prime(std::uint32_t n);

// Element of Z_m.
class ZmScalar {
 public:
  ZmScalar(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  ZmScalar operator+(const ZmScalar& o) const;
  ZmScalar operator-(const ZmScalar& o) const;
  ZmScalar operator*(const ZmScalar& o) const;
  ZmScalar operator-() const;
  ZmScalar pow(std::uint64_t e) const;

  bool operator==(const ZmScalar&) const = default;

 private:
  std::uint32_t value_;
  std::uint32_t modulus_;
};

// Element sum_l c_l g^l of R_{m,r}.
class RingElem {
 public:
  // Zero of R_{m,r}.
  RingElem(std::uint32_t m, std::uint32_t r);

  // Builds sum_l coeffs[l] g^l. Coefficients are reduced mod m and indices
  // folded mod r, so the vector may be longer than r.
  RingElem(std::uint32_t m, std::uint32_t r, std::span<const std::int64_t> coeffs);
  RingElem(std::uint32_t m, std::uint32_t r, std::initializer_list<std::int64_t> coeffs);

  static RingElem constant(std::int64_t c, std::uint32_t m, std::uint32_t r);
  static RingElem one(std::uint32_t m, std::uint32_t r) { return constant(1, m, r); }

  std::uint32_t modulus() const { return m_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(coeffs_.size()); }
  std::uint32_t coeff(std::size_t l) const { return coeffs_[l]; }
  std::span<const std::uint8_t> coeffs() const { return coeffs_; }

  // True iff every coefficient is zero.
  bool is_zero() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem scaled(std::int64_t c) const;
  RingElem pow(std::uint64_t e) const;

  // Multiplication by g^t; a cyclic shift of the coefficients.
  RingElem shifted(std::int64_t t) const;

  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }

  bool operator==(const RingElem& o) const = default;

  // r bytes, byte l = coefficient of g^l.
  void serialize(std::vector<std::uint8_t>& out) const;
  static RingElem deserialize(std::span<const std::uint8_t> bytes, std::uint32_t m,
                              std::uint32_t r);

  // e.g. "3g^5 + 4g^4 + 3g^3 + 2g"; "0" for zero.
  std::string to_string() const;

 private:
  void check_compatible(const RingElem& o) const;

  std::uint32_t m_;
  std::vector<std::uint8_t> coeffs_;
};

RingElem gamma_power(std::int64_t t, std::uint32_t m, std::uint32_t r);

// Coordinate-wise reduction R_{m,r} -> R_{p,r}; p must divide m.
RingElem reduce_mod_prime(const RingElem& a, std::uint32_t p);

// Image of `a` under the homomorphism fixing Z_m -> Z_t and sending g to
// `image_of_gamma` (an element of Z_t, t | m). Throws ParameterError if t does
// not divide m or the image is not an r-th root of unity in Z_t.
ZmScalar hom_apply(const RingElem& a, const ZmScalar& image_of_gamma);

// Z_t viewed as the ring R_{t,1}, so scalars can reuse ring machinery.
RingElem as_ring_scalar(const ZmScalar& s);

// Polynomial sum_j coeff_j x^j over R_{m,r}, trailing zeros trimmed.
class RingPoly {
 public:
  RingPoly(std::uint32_t m, std::uint32_t r) : m_(m), r_(r) {}
  RingPoly(std::uint32_t m, std::uint32_t r, std::vector<RingElem> coeffs);

  // x - root.
  static RingPoly linear(const RingElem& root);

  std::uint32_t modulus() const { return m_; }
  std::uint32_t order() const { return r_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Coefficient of x^j; zero past the degree.
  RingElem coeff(std::size_t j) const;
  const std::vector<RingElem>& coeffs() const { return coeffs_; }

  RingPoly operator+(const RingPoly& o) const;
  RingPoly operator*(const RingPoly& o) const;
  RingElem evaluate(const RingElem& x) const;

  bool operator==(const RingPoly& o) const = default;

 private:
  void trim();

  std::uint32_t m_;
  std::uint32_t r_;
  std::vector<RingElem> coeffs_;
};

RingPoly reduce_mod_prime(const RingPoly& f, std::uint32_t p);

// The unique polynomial over R_{m,r}, m = prod of the part moduli, that
// reduces to parts[i] modulo parts[i].modulus(). Part moduli must be pairwise
// coprime and share the order r.
RingPoly crt_lift(std::span<const RingPoly> parts);

}  // namespace mvpir

#endif  // MVPIR_RING_H_
