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

#include "mvpir/mv_family.h"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "mvpir/errors.h"

namespace mvpir {

namespace {

void check_s(std::uint32_t m, std::span<const std::uint32_t> s) {
  for (std::uint32_t a : s) {
    if (a == 0 || a >= m) {
      throw ParameterError("S must hold nonzero residues below m, got " + std::to_string(a));
    }
  }
}

std::vector<std::uint32_t> normalized_s(std::uint32_t m, std::span<const std::uint32_t> s) {
  check_s(m, s);
  std::vector<std::uint32_t> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_squarefree(std::uint32_t m) {
  for (std::uint32_t p : prime_factors(m)) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

// Element of Z_m^k whose residue mod primes[t] is given by `per_prime[t]`.
ZmVector crt_vector(std::span<const std::uint32_t> primes,
                    const std::vector<ZmVector>& per_prime, std::size_t k) {
  ZmVector out(k);
  std::vector<std::uint32_t> residues(primes.size());
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t t = 0; t < primes.size(); ++t) residues[t] = per_prime[t][c];
    out[c] = static_cast<std::uint32_t>(crt_combine(residues, primes));
  }
  return out;
}

// Pair (u, v) with u = e_{labels[t]} and v = 1 - e_{labels[t]} modulo each prime.
std::pair<ZmVector, ZmVector> labelled_pair(std::span<const std::uint32_t> primes,
                                            std::span<const std::size_t> labels, std::size_t k) {
  std::vector<ZmVector> u_parts(primes.size(), ZmVector(k, 0));
  std::vector<ZmVector> v_parts(primes.size(), ZmVector(k, 1));
  for (std::size_t t = 0; t < primes.size(); ++t) {
    u_parts[t][labels[t]] = 1;
    v_parts[t][labels[t]] = 0;
  }
  return {crt_vector(primes, u_parts, k), crt_vector(primes, v_parts, k)};
}

}  // namespace

bool MVFamily::in_s(std::uint32_t residue) const {
  return std::binary_search(s.begin(), s.end(), residue);
}

std::uint32_t inner_product_mod(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b, std::uint32_t m) {
  if (a.size() != b.size()) throw ParameterError("inner product of vectors of different length");
  std::uint64_t acc = 0;
  for (std::size_t c = 0; c < a.size(); ++c) acc += static_cast<std::uint64_t>(a[c]) * b[c];
  return static_cast<std::uint32_t>(acc % m);
}

std::optional<FamilyViolation> find_violation(const MVFamily& family) {
  check_modulus(family.m);
  check_s(family.m, family.s);
  if (family.u.size() != family.v.size()) throw ParameterError("|U| != |V|");
  auto check_shape = [&](const ZmVector& x) {
    if (x.size() != family.k) throw ParameterError("family vector has wrong dimension");
    for (std::uint32_t c : x) {
      if (c >= family.m) throw ParameterError("family vector entry not reduced mod m");
    }
  };
  for (const auto& x : family.u) check_shape(x);
  for (const auto& x : family.v) check_shape(x);

  const std::size_t n = family.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t ip = inner_product_mod(family.u[i], family.v[j], family.m);
      const bool ok = (i == j) ? ip == 0 : family.in_s(ip);
      if (!ok) return FamilyViolation{i, j, ip};
    }
  }
  return std::nullopt;
}

bool validate_family(const MVFamily& family) { return !find_violation(family).has_value(); }

std::vector<std::uint32_t> crt_residue_set(std::span<const std::uint32_t> primes) {
  if (primes.size() < 2) throw ParameterError("crt_residue_set needs at least two primes");
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw ParameterError(std::to_string(primes[i]) + " is not prime");
    for (std::size_t j = 0; j < i; ++j) {
      if (primes[j] == primes[i]) throw ParameterError("primes must be distinct");
    }
    m *= primes[i];
  }
  if (m > kMaxModulus) throw ParameterError("product of primes exceeds 255");

  // Every residue pattern in {0,1}^r except all-zero, lifted by CRT.
  std::vector<std::uint32_t> s;
  std::vector<std::uint32_t> residues(primes.size());
  for (std::uint32_t pattern = 1; pattern < (1u << primes.size()); ++pattern) {
    for (std::size_t t = 0; t < primes.size(); ++t) residues[t] = (pattern >> t) & 1u;
    s.push_back(static_cast<std::uint32_t>(crt_combine(residues, primes)));
  }
  std::sort(s.begin(), s.end());
  return s;
}

MVFamily product_family(std::span<const std::uint32_t> primes, std::size_t k) {
  if (k == 0) throw ParameterError("dimension must be positive");
  MVFamily family;
  family.s = crt_residue_set(primes);
  family.m = std::accumulate(primes.begin(), primes.end(), 1u, std::multiplies<>());
  family.k = k;
  std::vector<std::size_t> labels(primes.size(), 0);
  while (true) {
    auto [u, v] = labelled_pair(primes, labels, k);
    family.u.push_back(std::move(u));
    family.v.push_back(std::move(v));
    std::size_t t = 0;
    while (t < labels.size() && ++labels[t] == k) labels[t++] = 0;
    if (t == labels.size()) break;
  }
  return family;
}

MVFamily search_family(std::uint32_t m, std::size_t k, std::span<const std::uint32_t> s,
                       std::size_t target_n, std::uint64_t seed,
                       const SearchOptions& options) {
  check_modulus(m);
  if (k == 0) throw ParameterError("dimension must be positive");
  if (target_n == 0) throw ParameterError("target_n must be at least 1");
  if (s.empty()) throw ParameterError("S must be nonempty");

  MVFamily family;
  family.m = m;
  family.k = k;
  family.s = normalized_s(m, s);

  std::vector<std::uint32_t> primes;
  if (is_squarefree(m)) primes = prime_factors(m);
  std::vector<std::uint32_t> units;
  for (std::uint32_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) == 1) units.push_back(a);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> residue(0, m - 1);
  std::uniform_int_distribution<std::size_t> coord(0, k - 1);
  std::bernoulli_distribution structured(0.5);

  auto uniform_pair = [&]() -> std::pair<ZmVector, ZmVector> {
    ZmVector u(k), v(k);
    for (auto& c : u) c = residue(rng);
    for (auto& c : v) c = residue(rng);
    // Solve for one coordinate of v at a unit position of u.
    std::vector<std::size_t> unit_positions;
    for (std::size_t c = 0; c < k; ++c) {
      if (std::gcd(u[c], m) == 1) unit_positions.push_back(c);
    }
    if (unit_positions.empty()) {
      const std::size_t c = coord(rng);
      u[c] = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
      unit_positions.push_back(c);
    }
    const std::size_t pos =
        unit_positions[std::uniform_int_distribution<std::size_t>(0, unit_positions.size() - 1)(
            rng)];
    v[pos] = 0;
    const std::uint32_t rest = inner_product_mod(u, v, m);
    v[pos] = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(m - rest) % m) * mod_inverse(u[pos], m) % m);
    return {std::move(u), std::move(v)};
  };

  std::vector<std::size_t> labels(primes.size());
  std::uint64_t draws = 0;
  std::uint64_t since_accept = 0;
  std::size_t best = 0;
  // Early picks can box the greedy in; start over after a long dry spell.
  const std::uint64_t stall_limit = std::max<std::uint64_t>(20'000, options.budget / 40);
  while (family.size() < target_n) {
    best = std::max(best, family.size());
    if (draws++ >= options.budget) {
      throw CapacityError("search budget exhausted at n=" + std::to_string(best) +
                              " (target " + std::to_string(target_n) + ")",
                          best);
    }
    if (++since_accept > stall_limit) {
      family.u.clear();
      family.v.clear();
      since_accept = 0;
    }
    std::pair<ZmVector, ZmVector> cand;
    if (!primes.empty() && structured(rng)) {
      for (auto& l : labels) l = coord(rng);
      cand = labelled_pair(primes, labels, k);
    } else {
      cand = uniform_pair();
    }
    const auto& [u, v] = cand;
    bool ok = true;
    for (std::size_t j = 0; ok && j < family.size(); ++j) {
      ok = family.in_s(inner_product_mod(u, family.v[j], m)) &&
           family.in_s(inner_product_mod(family.u[j], v, m));
    }
    if (!ok) continue;
    family.u.push_back(std::move(cand.first));
    family.v.push_back(std::move(cand.second));
    since_accept = 0;
  }

  // u <- u E, v <- v E^{-T} with E = I + c e_a e_b^T keeps every <u_i, v_j>.
  const std::size_t rounds = options.mixing_rounds ? options.mixing_rounds : 4 * k;
  if (k >= 2) {
    std::uniform_int_distribution<std::uint32_t> scale(1, m - 1);
    for (std::size_t round = 0; round < rounds; ++round) {
      const std::size_t a = coord(rng);
      std::size_t b = coord(rng);
      while (b == a) b = coord(rng);
      const std::uint32_t c = scale(rng);
      for (auto& u : family.u) u[b] = (u[b] + c * u[a]) % m;
      for (auto& v : family.v) v[a] = (v[a] + (m - c) * v[b]) % m;
    }
  }

  if (auto bad = find_violation(family)) {
    throw InternalError("search produced an invalid family at pair (" + std::to_string(bad->i) +
                        ", " + std::to_string(bad->j) + ")");
  }
  return family;
}

MVFamily truncate_family(const MVFamily& family, std::size_t n) {
  if (n > family.size()) throw ParameterError("cannot truncate family to a larger size");
  MVFamily out = family;
  out.u.resize(n);
  out.v.resize(n);
  return out;
}

void write_family(std::ostream& os, const MVFamily& family) {
  os << "mvf " << family.m << ' ' << family.k << ' ' << family.size() << '\n';
  os << 'S';
  for (std::uint32_t a : family.s) os << ' ' << a;
  os << '\n';
  for (const auto& u : family.u) {
    os << 'u';
    for (std::uint32_t c : u) os << ' ' << c;
    os << '\n';
  }
  for (const auto& v : family.v) {
    os << 'v';
    for (std::uint32_t c : v) os << ' ' << c;
    os << '\n';
  }
}

MVFamily read_family(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto next_record = [&](const char* tag) -> std::istringstream {
    if (!std::getline(is, line)) {
      throw ParseError(std::string("family file truncated: expected '") + tag + "' record");
    }
    ++line_no;
    std::istringstream ls(line);
    std::string got;
    if (!(ls >> got) || got != tag) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '" + tag + "' record");
    }
    return ls;
  };
  auto read_uint = [&](std::istringstream& ls, std::uint64_t limit) -> std::uint64_t {
    long long value = 0;
    if (!(ls >> value) || value < 0 || static_cast<std::uint64_t>(value) > limit) {
      throw ParseError("line " + std::to_string(line_no) + ": bad or out-of-range integer");
    }
    return static_cast<std::uint64_t>(value);
  };
  auto expect_end = [&](std::istringstream& ls) {
    std::string extra;
    if (ls >> extra) throw ParseError("line " + std::to_string(line_no) + ": trailing data");
  };

  MVFamily family;
  auto header = next_record("mvf");
  family.m = static_cast<std::uint32_t>(read_uint(header, kMaxModulus));
  family.k = static_cast<std::size_t>(read_uint(header, 1u << 20));
  const auto n = static_cast<std::size_t>(read_uint(header, 1u << 24));
  expect_end(header);
  if (family.m < 2) throw ParseError("modulus must be at least 2");

  auto s_line = next_record("S");
  std::uint64_t value = 0;
  while (s_line >> value) {
    if (value == 0 || value >= family.m) throw ParseError("S residue out of range");
    family.s.push_back(static_cast<std::uint32_t>(value));
  }
  if (!s_line.eof()) throw ParseError("line " + std::to_string(line_no) + ": bad S entry");
  family.s = normalized_s(family.m, family.s);

  auto read_vectors = [&](const char* tag, std::vector<ZmVector>& out) {
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto ls = next_record(tag);
      ZmVector x(family.k);
      for (auto& c : x) c = static_cast<std::uint32_t>(read_uint(ls, family.m - 1));
      expect_end(ls);
      out.push_back(std::move(x));
    }
  };
  read_vectors("u", family.u);
  read_vectors("v", family.v);

  if (auto bad = find_violation(family)) {
    throw IntegrityError("matching property fails at pair (" + std::to_string(bad->i) + ", " +
                         std::to_string(bad->j) + "): <u_i, v_j> = " +
                         std::to_string(bad->inner_product) + " mod " +
                         std::to_string(family.m));
  }
  return family;
}

void save_family(const MVFamily& family, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ParameterError("cannot open " + path.string() + " for writing");
  write_family(os, family);
  if (!os) throw ParameterError("write to " + path.string() + " failed");
}

MVFamily load_family(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open family file " + path.string());
  return read_family(is);
}

std::array<std::uint8_t, 32> family_digest(const MVFamily& family) {
  std::ostringstream os;
  write_family(os, family);
  const std::string text = os.str();
  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != digest.size()) {
    throw InternalError("SHA-256 failed");
  }
  return digest;
}

}  // namespace mvpir
