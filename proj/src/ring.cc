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

#include "mvpir/ring.h"

#include <numeric>
#include <sstream>

#include "mvpir/errors.h"

namespace mvpir {

void check_modulus(std::uint32_t m) {
  if (m < 2 || m > kMaxModulus) {
    throw ParameterError("modulus " + std::to_string(m) + " outside [2, 255]");
  }
}

std::uint32_t mod_reduce(std::int64_t value, std::uint32_t m) {
  std::int64_t r = value % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
  std::int64_t old_r = mod_reduce(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw ParameterError(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return mod_reduce(old_s, m);
}

std::uint64_t crt_combine(std::span<const std::uint32_t> residues,
                          std::span<const std::uint32_t> moduli) {
  if (residues.size() != moduli.size() || moduli.empty()) {
    throw ParameterError("crt_combine: residue/modulus count mismatch");
  }
  std::uint64_t x = 0;
  std::uint64_t mod = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint32_t p = moduli[i];
    if (p == 0 || std::gcd<std::uint64_t, std::uint64_t>(mod, p) != 1) {
      throw ParameterError("crt_combine: moduli are not pairwise coprime");
    }
    // x' = x + mod * ((res - x) * mod^{-1} mod p)
    const std::uint32_t inv = p == 1 ? 0 : mod_inverse(mod_reduce(mod % p, p), p);
    const std::uint64_t diff = (residues[i] % p + p - x % p) % p;
    x += mod * ((diff * inv) % p);
    mod *= p;
  }
  return x % mod;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------- ZmScalar

ZmScalar::ZmScalar(std::int64_t value, std::uint32_t modulus)
    : value_(0), modulus_(modulus) {
  check_modulus(modulus);
  value_ = mod_reduce(value, modulus);
}

ZmScalar ZmScalar::operator+(const ZmScalar& o) const {
  if (o.modulus_ != modulus_) throw ParameterError("ZmScalar modulus mismatch");
  return ZmScalar(static_cast<std::int64_t>(value_) + o.value_, modulus_);
}

ZmScalar ZmScalar::operator-(const ZmScalar& o) const {
  if (o.modulus_ != modulus_) throw ParameterError("ZmScalar modulus mismatch");
  return ZmScalar(static_cast<std::int64_t>(value_) - o.value_, modulus_);
}

ZmScalar ZmScalar::operator*(const ZmScalar& o) const {
  if (o.modulus_ != modulus_) throw ParameterError("ZmScalar modulus mismatch");
  return ZmScalar(static_cast<std::int64_t>(value_) * o.value_, modulus_);
}

ZmScalar ZmScalar::operator-() const {
  return ZmScalar(-static_cast<std::int64_t>(value_), modulus_);
}

ZmScalar ZmScalar::pow(std::uint64_t e) const {
  ZmScalar result(1, modulus_);
  ZmScalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(std::uint32_t m, std::uint32_t r) : m_(m) {
  check_modulus(m);
  if (r == 0) throw ParameterError("ring order must be positive");
  coeffs_.assign(r, 0);
}

RingElem::RingElem(std::uint32_t m, std::uint32_t r, std::span<const std::int64_t> coeffs)
    : RingElem(m, r) {
  std::vector<std::int64_t> acc(r, 0);
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    acc[l % r] = mod_reduce(acc[l % r] + mod_reduce(coeffs[l], m), m);
  }
  for (std::uint32_t l = 0; l < r; ++l) coeffs_[l] = static_cast<std::uint8_t>(acc[l]);
}

RingElem::RingElem(std::uint32_t m, std::uint32_t r, std::initializer_list<std::int64_t> coeffs)
    : RingElem(m, r, std::span<const std::int64_t>(coeffs.begin(), coeffs.size())) {}

RingElem RingElem::constant(std::int64_t c, std::uint32_t m, std::uint32_t r) {
  RingElem e(m, r);
  e.coeffs_[0] = static_cast<std::uint8_t>(mod_reduce(c, m));
  return e;
}

bool RingElem::is_zero() const {
  for (std::uint8_t c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

void RingElem::check_compatible(const RingElem& o) const {
  if (o.m_ != m_ || o.coeffs_.size() != coeffs_.size()) {
    throw ParameterError("ring element (m, r) mismatch");
  }
}

RingElem RingElem::operator+(const RingElem& o) const {
  check_compatible(o);
  RingElem out(m_, order());
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    out.coeffs_[l] = static_cast<std::uint8_t>((coeffs_[l] + o.coeffs_[l]) % m_);
  }
  return out;
}

RingElem RingElem::operator-(const RingElem& o) const {
  check_compatible(o);
  RingElem out(m_, order());
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    out.coeffs_[l] = static_cast<std::uint8_t>((coeffs_[l] + m_ - o.coeffs_[l]) % m_);
  }
  return out;
}

RingElem RingElem::operator*(const RingElem& o) const {
  check_compatible(o);
  const std::size_t r = coeffs_.size();
  std::vector<std::uint32_t> acc(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      std::size_t idx = i + j;
      if (idx >= r) idx -= r;
      acc[idx] = (acc[idx] + static_cast<std::uint32_t>(coeffs_[i]) * o.coeffs_[j]) % m_;
    }
  }
  RingElem out(m_, order());
  for (std::size_t l = 0; l < r; ++l) out.coeffs_[l] = static_cast<std::uint8_t>(acc[l]);
  return out;
}

RingElem RingElem::operator-() const { return RingElem(m_, order()) - *this; }

RingElem RingElem::scaled(std::int64_t c) const {
  const std::uint32_t cm = mod_reduce(c, m_);
  RingElem out(m_, order());
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    out.coeffs_[l] = static_cast<std::uint8_t>((coeffs_[l] * cm) % m_);
  }
  return out;
}

RingElem RingElem::pow(std::uint64_t e) const {
  RingElem result = one(m_, order());
  RingElem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

RingElem RingElem::shifted(std::int64_t t) const {
  const std::uint32_t r = order();
  const std::uint32_t s = mod_reduce(t, r);
  RingElem out(m_, r);
  for (std::uint32_t l = 0; l < r; ++l) out.coeffs_[(l + s) % r] = coeffs_[l];
  return out;
}

void RingElem::serialize(std::vector<std::uint8_t>& out) const {
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
}

RingElem RingElem::deserialize(std::span<const std::uint8_t> bytes, std::uint32_t m,
                               std::uint32_t r) {
  if (bytes.size() != r) throw ParseError("ring element needs exactly r bytes");
  RingElem out(m, r);
  for (std::uint32_t l = 0; l < r; ++l) {
    if (bytes[l] >= m) throw ParseError("ring coefficient out of range");
    out.coeffs_[l] = bytes[l];
  }
  return out;
}

std::string RingElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t l = coeffs_.size(); l-- > 0;) {
    const unsigned c = coeffs_[l];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (l == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << 'g';
    if (l > 1) os << '^' << l;
  }
  return first ? "0" : os.str();
}

RingElem gamma_power(std::int64_t t, std::uint32_t m, std::uint32_t r) {
  return RingElem::one(m, r).shifted(t);
}

RingElem reduce_mod_prime(const RingElem& a, std::uint32_t p) {
  if (p < 2 || a.modulus() % p != 0) {
    throw ParameterError(std::to_string(p) + " does not divide modulus " +
                         std::to_string(a.modulus()));
  }
  std::vector<std::int64_t> c(a.coeffs().begin(), a.coeffs().end());
  return RingElem(p, a.order(), c);
}

ZmScalar hom_apply(const RingElem& a, const ZmScalar& image_of_gamma) {
  const std::uint32_t t = image_of_gamma.modulus();
  if (a.modulus() % t != 0) {
    throw ParameterError("target modulus " + std::to_string(t) + " does not divide " +
                         std::to_string(a.modulus()));
  }
  if (image_of_gamma.pow(a.order()).value() != 1 % t) {
    throw ParameterError("image of g is not an r-th root of unity in the target");
  }
  ZmScalar acc(0, t);
  ZmScalar power(1, t);
  for (std::uint32_t l = 0; l < a.order(); ++l) {
    acc = acc + ZmScalar(a.coeff(l), t) * power;
    power = power * image_of_gamma;
  }
  return acc;
}

RingElem as_ring_scalar(const ZmScalar& s) {
  return RingElem::constant(s.value(), s.modulus(), 1);
}

// ---------------------------------------------------------------- RingPoly

RingPoly::RingPoly(std::uint32_t m, std::uint32_t r, std::vector<RingElem> coeffs)
    : m_(m), r_(r), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.modulus() != m_ || c.order() != r_) {
      throw ParameterError("polynomial coefficient (m, r) mismatch");
    }
  }
  trim();
}

RingPoly RingPoly::linear(const RingElem& root) {
  return RingPoly(root.modulus(), root.order(),
                  {-root, RingElem::one(root.modulus(), root.order())});
}

void RingPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RingElem RingPoly::coeff(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : RingElem(m_, r_);
}

RingPoly RingPoly::operator+(const RingPoly& o) const {
  if (o.m_ != m_ || o.r_ != r_) throw ParameterError("polynomial (m, r) mismatch");
  const std::size_t len = std::max(coeffs_.size(), o.coeffs_.size());
  std::vector<RingElem> out;
  out.reserve(len);
  for (std::size_t j = 0; j < len; ++j) out.push_back(coeff(j) + o.coeff(j));
  return RingPoly(m_, r_, std::move(out));
}

RingPoly RingPoly::operator*(const RingPoly& o) const {
  if (o.m_ != m_ || o.r_ != r_) throw ParameterError("polynomial (m, r) mismatch");
  if (coeffs_.empty() || o.coeffs_.empty()) return RingPoly(m_, r_);
  std::vector<RingElem> out(coeffs_.size() + o.coeffs_.size() - 1, RingElem(m_, r_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return RingPoly(m_, r_, std::move(out));
}

RingElem RingPoly::evaluate(const RingElem& x) const {
  if (x.modulus() != m_ || x.order() != r_) throw ParameterError("evaluation point mismatch");
  RingElem acc(m_, r_);
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
  return acc;
}

RingPoly reduce_mod_prime(const RingPoly& f, std::uint32_t p) {
  std::vector<RingElem> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(reduce_mod_prime(c, p));
  if (f.coeffs().empty() && f.modulus() % p != 0) {
    throw ParameterError(std::to_string(p) + " does not divide modulus");
  }
  return RingPoly(p, f.order(), std::move(out));
}

RingPoly crt_lift(std::span<const RingPoly> parts) {
  if (parts.empty()) throw ParameterError("crt_lift needs at least one part");
  const std::uint32_t r = parts.front().order();
  std::vector<std::uint32_t> moduli;
  std::uint64_t m = 1;
  int degree = -1;
  for (const auto& part : parts) {
    if (part.order() != r) throw ParameterError("crt_lift parts disagree on ring order");
    moduli.push_back(part.modulus());
    m *= part.modulus();
    degree = std::max(degree, part.degree());
  }
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (std::gcd(moduli[i], moduli[j]) != 1) {
        throw ParameterError("crt_lift moduli are not pairwise coprime");
      }
    }
  }
  if (m > kMaxModulus) throw ParameterError("lifted modulus exceeds 255");
  const auto lifted_m = static_cast<std::uint32_t>(m);

  std::vector<RingElem> coeffs;
  std::vector<std::uint32_t> residues(parts.size());
  for (int j = 0; j <= degree; ++j) {
    std::vector<std::int64_t> c(r);
    for (std::uint32_t l = 0; l < r; ++l) {
      for (std::size_t i = 0; i < parts.size(); ++i) residues[i] = parts[i].coeff(j).coeff(l);
      c[l] = static_cast<std::int64_t>(crt_combine(residues, moduli));
    }
    coeffs.emplace_back(lifted_m, r, c);
  }
  return RingPoly(lifted_m, r, std::move(coeffs));
}

}  // namespace mvpir
