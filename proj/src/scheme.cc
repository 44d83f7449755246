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

#include "mvpir/scheme.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>

#include "mvpir/errors.h"

namespace mvpir {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 6> kVariantNames = {{
    {Variant::kBaselineCubic, "baseline-cubic"},
    {Variant::kMv2Server, "mv-2server"},
    {Variant::kMv2ServerHomZ6, "mv-2server-hom-z6"},
    {Variant::kMv2ServerHomF3, "mv-2server-hom-f3"},
    {Variant::kMv2ServerOrder2, "mv-2server-order2"},
    {Variant::kMvKServer, "mv-kserver"},
}};

bool is_two_server_first_order(Variant v) {
  return v == Variant::kMv2Server || v == Variant::kMv2ServerHomZ6 ||
         v == Variant::kMv2ServerHomF3;
}

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> x) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

}  // namespace

std::string_view variant_name(Variant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  throw ParameterError("unknown scheme variant '" + std::string(name) + "'");
}

Variant variant_from_id(std::uint8_t id) {
  if (id > static_cast<std::uint8_t>(Variant::kMvKServer)) {
    throw ParameterError("unknown scheme id " + std::to_string(id));
  }
  return static_cast<Variant>(id);
}

// ------------------------------------------------------------ SchemeConfig

SchemeConfig SchemeConfig::mv_2server() {
  SchemeConfig cfg;
  cfg.variant = Variant::kMv2Server;
  cfg.m = 6;
  cfg.primes = {2, 3};
  cfg.s = {1, 3, 4};
  cfg.servers = 2;
  cfg.t_values = {0, 1};
  return cfg;
}

SchemeConfig SchemeConfig::mv_2server_hom(std::uint32_t target) {
  SchemeConfig cfg = mv_2server();
  if (target == 6) {
    cfg.variant = Variant::kMv2ServerHomZ6;
  } else if (target == 3) {
    cfg.variant = Variant::kMv2ServerHomF3;
  } else {
    throw ParameterError("homomorphic target must be 6 or 3");
  }
  return cfg;
}

SchemeConfig SchemeConfig::mv_2server_order2() {
  SchemeConfig cfg = mv_2server();
  cfg.variant = Variant::kMv2ServerOrder2;
  cfg.s = {1, 2, 3, 4, 5};
  return cfg;
}

SchemeConfig SchemeConfig::mv_kserver(std::span<const std::uint32_t> primes) {
  SchemeConfig cfg;
  cfg.variant = Variant::kMvKServer;
  cfg.primes.assign(primes.begin(), primes.end());
  cfg.s = crt_residue_set(primes);
  cfg.m = std::accumulate(primes.begin(), primes.end(), 1u, std::multiplies<>());
  cfg.servers = std::size_t{1} << (primes.size() - 1);
  cfg.t_values.resize(cfg.servers);
  std::iota(cfg.t_values.begin(), cfg.t_values.end(), 0);
  return cfg;
}

SchemeConfig SchemeConfig::baseline_cubic(std::uint32_t field, std::int64_t t1, std::int64_t t2) {
  SchemeConfig cfg;
  cfg.variant = Variant::kBaselineCubic;
  cfg.m = field;
  cfg.servers = 2;
  cfg.t_values = {t1, t2};
  return cfg;
}

SchemeConfig SchemeConfig::for_variant(Variant v, std::span<const std::uint32_t> primes) {
  switch (v) {
    case Variant::kBaselineCubic:
      return baseline_cubic();
    case Variant::kMv2Server:
      return mv_2server();
    case Variant::kMv2ServerHomZ6:
      return mv_2server_hom(6);
    case Variant::kMv2ServerHomF3:
      return mv_2server_hom(3);
    case Variant::kMv2ServerOrder2:
      return mv_2server_order2();
    case Variant::kMvKServer: {
      static constexpr std::array<std::uint32_t, 2> kDefault = {2, 3};
      return mv_kserver(primes.empty() ? std::span<const std::uint32_t>(kDefault) : primes);
    }
  }
  throw ParameterError("unknown variant");
}

bool SchemeConfig::is_homomorphic() const {
  return variant == Variant::kMv2ServerHomZ6 || variant == Variant::kMv2ServerHomF3;
}

std::optional<ZmScalar> SchemeConfig::gamma_image() const {
  if (variant == Variant::kMv2ServerHomZ6) return ZmScalar(-1, 6);
  if (variant == Variant::kMv2ServerHomF3) return ZmScalar(-1, 3);
  return std::nullopt;
}

std::uint32_t SchemeConfig::answer_modulus() const {
  if (auto img = gamma_image()) return img->modulus();
  return m;
}

std::uint32_t SchemeConfig::answer_order() const {
  if (is_homomorphic() || variant == Variant::kBaselineCubic) return 1;
  return m;
}

std::uint32_t SchemeConfig::alphabet() const {
  return variant == Variant::kMvKServer ? m : 2;
}

std::vector<std::uint32_t> SchemeConfig::column_exponents() const {
  std::vector<std::uint32_t> cols = {0};
  cols.insert(cols.end(), s.begin(), s.end());
  return sorted_unique(std::move(cols));
}

void SchemeConfig::validate() const {
  check_modulus(m);
  if (servers == 0 || t_values.size() != servers) {
    throw ParameterError("need exactly one evaluation parameter per server");
  }
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (mod_reduce(t_values[i], m) == mod_reduce(t_values[j], m)) {
        throw ParameterError("evaluation parameters must be distinct mod m");
      }
    }
  }

  if (variant == Variant::kBaselineCubic) {
    if (!is_prime(m) || m <= 3) throw ParameterError("baseline field size must be a prime > 3");
    if (servers != 2) throw ParameterError("baseline uses two servers");
    for (std::int64_t t : t_values) {
      if (mod_reduce(t, m) == 0) throw ParameterError("baseline evaluation points must be nonzero");
    }
    return;
  }

  for (std::uint32_t a : s) {
    if (a == 0 || a >= m) throw ParameterError("S must hold nonzero residues below m");
  }
  if (sorted_unique(s) != s) throw ParameterError("S must be sorted and distinct");

  if (variant == Variant::kMvKServer) {
    if (primes.size() < 2) throw ParameterError("mv-kserver needs at least two primes");
    const std::uint64_t prod =
        std::accumulate(primes.begin(), primes.end(), std::uint64_t{1}, std::multiplies<>());
    if (prod != m) throw ParameterError("m must equal the product of the primes");
    if (s != crt_residue_set(primes)) throw ParameterError("mv-kserver requires the CRT set S");
    if (servers != (std::size_t{1} << (primes.size() - 1))) {
      throw ParameterError("mv-kserver uses 2^(r-1) servers");
    }
    for (std::size_t i = 0; i < servers; ++i) {
      if (t_values[i] != static_cast<std::int64_t>(i)) {
        throw ParameterError("mv-kserver requires t_i = i - 1");
      }
    }
  } else {
    if (m != 6 || servers != 2) throw ParameterError("two-server MV variants run over Z_6");
    const std::vector<std::uint32_t> expected =
        needs_f2() ? std::vector<std::uint32_t>{1, 2, 3, 4, 5} : std::vector<std::uint32_t>{1, 3, 4};
    if (s != expected) throw ParameterError("unexpected S for this variant");
  }
  if (column_exponents().size() != servers * (derivative_order() + 1)) {
    throw ParameterError("interpolation system is not square");
  }
}

void check_family(const SchemeConfig& cfg, const MVFamily& family) {
  if (family.m != cfg.m) {
    throw ParameterError("family modulus " + std::to_string(family.m) +
                         " does not match scheme modulus " + std::to_string(cfg.m));
  }
  for (std::uint32_t a : family.s) {
    if (!std::binary_search(cfg.s.begin(), cfg.s.end(), a)) {
      throw ParameterError("family inner product " + std::to_string(a) +
                           " is outside the scheme's S");
    }
  }
  if (family.size() == 0) throw ParameterError("family is empty");
}

// ------------------------------------------------------------------ queries

QueryState query_from_randomness(const SchemeConfig& cfg, const MVFamily& family,
                                 std::size_t tau, ZmVector z) {
  if (tau >= family.size()) {
    throw ParameterError("index " + std::to_string(tau) + " out of range [0, " +
                         std::to_string(family.size()) + ")");
  }
  if (z.size() != family.k) throw ParameterError("randomness has wrong dimension");
  QueryState state;
  state.tau = tau;
  const ZmVector& v = family.v[tau];
  for (std::int64_t t : cfg.t_values) {
    const std::uint32_t tm = mod_reduce(t, cfg.m);
    ZmVector q(family.k);
    for (std::size_t c = 0; c < family.k; ++c) q[c] = (z[c] + tm * v[c]) % cfg.m;
    state.queries.push_back(std::move(q));
  }
  state.z = std::move(z);
  return state;
}

QueryState query_gen(const SchemeConfig& cfg, const MVFamily& family, std::size_t tau,
                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> residue(0, cfg.m - 1);
  ZmVector z(family.k);
  for (auto& c : z) c = residue(rng);
  return query_from_randomness(cfg, family, tau, std::move(z));
}

AnswerBundle server_answer(const SchemeConfig& cfg, const EncodedDatabase& db,
                           std::span<const std::uint32_t> q) {
  AnswerBundle bundle = evaluate_bundle(db, q, cfg.needs_f2());
  const auto image = cfg.gamma_image();
  if (!image) return bundle;
  auto map = [&](const RingElem& e) { return as_ring_scalar(hom_apply(e, *image)); };
  AnswerBundle out{map(bundle.f0), {}, std::nullopt};
  for (const auto& e : bundle.f1) out.f1.push_back(map(e));
  return out;
}

// ----------------------------------------------------------------- matrices

RingMatrix build_matrix(const SchemeConfig& cfg) {
  cfg.validate();
  if (cfg.variant == Variant::kBaselineCubic) {
    const std::uint32_t q = cfg.m;
    RingMatrix mat(4, q, 1);
    for (std::size_t i = 0; i < 2; ++i) {
      const ZmScalar t(cfg.t_values[i], q);
      for (std::uint32_t l = 0; l < 4; ++l) {
        mat.set(2 * i, l, as_ring_scalar(t.pow(l)));
        const ZmScalar deriv = l == 0 ? ZmScalar(0, q) : ZmScalar(l, q) * t.pow(l - 1);
        mat.set(2 * i + 1, l, as_ring_scalar(deriv));
      }
    }
    return mat;
  }

  const auto cols = cfg.column_exponents();
  const std::size_t orders = cfg.derivative_order() + 1;
  RingMatrix mat(cols.size(), cfg.m, cfg.m);
  for (std::size_t i = 0; i < cfg.servers; ++i) {
    for (std::size_t d = 0; d < orders; ++d) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::int64_t l = cols[c];
        std::int64_t scale = 1;
        for (std::size_t e = 0; e < d; ++e) scale *= l;
        mat.set(i * orders + d, c, gamma_power(cfg.t_values[i] * l, cfg.m, cfg.m).scaled(scale));
      }
    }
  }
  if (const auto image = cfg.gamma_image()) {
    RingMatrix mapped(cols.size(), image->modulus(), 1);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        mapped.set(i, j, as_ring_scalar(hom_apply(mat.at(i, j), *image)));
      }
    }
    return mapped;
  }
  return mat;
}

std::vector<RingElem> interpolation_values(const SchemeConfig& cfg, const MVFamily& family,
                                           const QueryState& state,
                                           std::span<const AnswerBundle> answers) {
  if (answers.size() != cfg.servers) {
    throw ProtocolError("expected " + std::to_string(cfg.servers) + " answers, got " +
                        std::to_string(answers.size()));
  }
  if (state.tau >= family.size()) throw ParameterError("query state index out of range");
  const ZmVector& v = family.v[state.tau];
  const std::size_t k = family.k;
  const std::uint32_t am = cfg.answer_modulus();
  const std::uint32_t ar = cfg.answer_order();

  std::vector<RingElem> b;
  for (const AnswerBundle& a : answers) {
    if (a.f0.modulus() != am || a.f0.order() != ar || a.f1.size() != k) {
      throw ProtocolError("answer does not match the scheme's shape");
    }
    b.push_back(a.f0);
    RingElem g1(am, ar);
    for (std::size_t j = 0; j < k; ++j) g1 += a.f1[j].scaled(v[j]);
    b.push_back(std::move(g1));
    if (cfg.needs_f2()) {
      if (!a.f2 || a.f2->size() != k) throw ProtocolError("second-order answer missing F^(2)");
      RingElem g2(am, ar);
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
          g2 += a.f2->at(j, l).scaled(static_cast<std::int64_t>(v[j]) * v[l]);
        }
      }
      b.push_back(std::move(g2));
    }
  }
  return b;
}

// ------------------------------------------------------------------- lambda

LambdaVector lambda_vector(const SchemeConfig& cfg) {
  if (cfg.variant != Variant::kMvKServer) throw ParameterError("lambda is for mv-kserver only");
  cfg.validate();
  const std::uint32_t m = cfg.m;
  const std::size_t q = cfg.servers;

  // f_i = prod_{l in S, l = 0 mod p_i} (x - g^l) over R_{p_i, m}.
  std::vector<RingPoly> parts;
  for (std::uint32_t p : cfg.primes) {
    RingPoly f(p, m, {RingElem::one(p, m)});
    for (std::uint32_t l : cfg.s) {
      if (l % p == 0) f = f * RingPoly::linear(gamma_power(l, p, m));
    }
    if (f.degree() != static_cast<int>(q) - 1) {
      throw InternalError("f_i has degree " + std::to_string(f.degree()) + ", expected q - 1");
    }
    parts.push_back(std::move(f));
  }
  RingPoly f = crt_lift(parts);

  LambdaVector out{{}, RingElem(m, m), f};
  for (std::size_t i = 0; i < q; ++i) {
    out.entries.push_back(f.coeff(i));
    out.entries.push_back(-f.coeff(i));
  }
  out.mu = f.evaluate(RingElem::one(m, m));

  const RingMatrix mat = build_matrix(cfg);
  const std::vector<RingElem> product = mat.apply_left(out.entries);
  if (product[0] != out.mu) throw InternalError("(lambda M)_0 != mu");
  for (std::size_t c = 1; c < product.size(); ++c) {
    if (!product[c].is_zero()) throw InternalError("lambda M has a nonzero entry past column 0");
  }
  for (std::uint32_t l : cfg.s) {
    const RingElem at = f.evaluate(gamma_power(l, m, m));
    if (!(at - at.scaled(l)).is_zero()) throw InternalError("h(l) != 0 for l in S");
  }
  for (std::uint32_t p : cfg.primes) {
    if (reduce_mod_prime(out.mu, p).is_zero()) throw InternalError("mu vanishes mod a prime");
  }
  return out;
}

// ----------------------------------------------------------------- recovery

std::uint32_t reconstruct_2server(const SchemeConfig& cfg, const MVFamily& family,
                                  std::span<const RingElem> adj_first_row,
                                  const QueryState& state,
                                  std::span<const AnswerBundle> answers) {
  if (!is_two_server_first_order(cfg.variant)) {
    throw ParameterError("reconstruct_2server needs a first-order two-server variant");
  }
  const auto b = interpolation_values(cfg, family, state, answers);
  return recover_scaled_first(adj_first_row, b).is_zero() ? 0 : 1;
}

std::uint32_t reconstruct_order2(const SchemeConfig& cfg, const MVFamily& family,
                                 std::span<const RingElem> adj_first_row,
                                 const QueryState& state,
                                 std::span<const AnswerBundle> answers) {
  if (cfg.variant != Variant::kMv2ServerOrder2) {
    throw ParameterError("reconstruct_order2 needs the second-order variant");
  }
  const auto b = interpolation_values(cfg, family, state, answers);
  return recover_scaled_first(adj_first_row, b).is_zero() ? 0 : 1;
}

std::uint32_t reconstruct_kserver(const SchemeConfig& cfg, const MVFamily& family,
                                  const LambdaVector& lambda, const QueryState& state,
                                  std::span<const AnswerBundle> answers) {
  if (cfg.variant != Variant::kMvKServer) throw ParameterError("not an mv-kserver scheme");
  const auto b = interpolation_values(cfg, family, state, answers);
  const std::uint32_t m = cfg.m;

  // nu = mu c_0 = a_tau mu g^s, so nu_{j+s} = a_tau mu_j.
  RingElem nu(m, m);
  for (std::size_t i = 0; i < b.size(); ++i) nu += lambda.entries[i] * b[i];
  const std::uint32_t shift = inner_product_mod(family.u[state.tau], state.z, m);

  std::vector<std::uint32_t> residues;
  for (std::uint32_t p : cfg.primes) {
    std::size_t j = 0;
    while (j < m && lambda.mu.coeff(j) % p == 0) ++j;
    if (j == m) throw InternalError("mu has no coefficient invertible mod " + std::to_string(p));
    const std::uint32_t inv = mod_inverse(lambda.mu.coeff(j) % p, p);
    residues.push_back(inv * (nu.coeff((j + shift) % m) % p) % p);
  }
  return static_cast<std::uint32_t>(crt_combine(residues, cfg.primes));
}

// ------------------------------------------------------------------- Scheme

namespace {

SchemeConfig validated(SchemeConfig cfg, const MVFamily& family) {
  cfg.validate();
  if (cfg.variant == Variant::kBaselineCubic) {
    throw ParameterError("baseline-cubic does not use a matching vector family");
  }
  check_family(cfg, family);
  return cfg;
}

}  // namespace

Scheme::Scheme(SchemeConfig cfg, MVFamily family)
    : cfg_(validated(std::move(cfg), family)),
      family_(std::move(family)),
      matrix_(build_matrix(cfg_)),
      det_(determinant(matrix_)),
      adj_row_(adjugate_first_row(matrix_)) {
  if (det_.is_zero()) throw ParameterError("interpolation matrix is singular");
  if (cfg_.variant == Variant::kMvKServer) lambda_ = lambda_vector(cfg_);
}

QueryState Scheme::query(std::size_t tau, std::mt19937_64& rng) const {
  return query_gen(cfg_, family_, tau, rng);
}

QueryState Scheme::query_with(std::size_t tau, ZmVector z) const {
  return query_from_randomness(cfg_, family_, tau, std::move(z));
}

AnswerBundle Scheme::answer(const EncodedDatabase& db, std::span<const std::uint32_t> q) const {
  return server_answer(cfg_, db, q);
}

std::uint32_t Scheme::reconstruct(const QueryState& state,
                                  std::span<const AnswerBundle> answers) const {
  switch (cfg_.variant) {
    case Variant::kMvKServer:
      return reconstruct_kserver(cfg_, family_, *lambda_, state, answers);
    case Variant::kMv2ServerOrder2:
      return reconstruct_order2(cfg_, family_, adj_row_, state, answers);
    default:
      return reconstruct_2server(cfg_, family_, adj_row_, state, answers);
  }
}

EncodedDatabase Scheme::encode_database(std::span<const std::uint32_t> symbols) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= cfg_.alphabet()) {
      throw ParameterError("symbol " + std::to_string(symbols[i]) + " at index " +
                           std::to_string(i) + " outside the " +
                           std::string(variant_name(cfg_.variant)) + " alphabet of size " +
                           std::to_string(cfg_.alphabet()));
    }
  }
  return encode(symbols, family_);
}

std::uint32_t Scheme::retrieve_local(const EncodedDatabase& db, std::size_t tau,
                                     std::mt19937_64& rng) const {
  const QueryState state = query(tau, rng);
  std::vector<AnswerBundle> answers;
  answers.reserve(state.queries.size());
  for (const auto& q : state.queries) answers.push_back(answer(db, q));
  return reconstruct(state, answers);
}

std::size_t Scheme::answer_bytes() const {
  return AnswerBundle::serialized_size(cfg_.answer_order(), family_.k, cfg_.needs_f2());
}

}  // namespace mvpir
