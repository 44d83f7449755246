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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mvpir/errors.h"
#include "oracle.h"

namespace mvpir {
namespace {

using testing::coeffs_of;

const std::vector<std::uint32_t> kP23 = {2, 3};
const std::vector<std::uint32_t> kP235 = {2, 3, 5};

MVFamily small_family(std::size_t k) { return product_family(kP23, k); }

std::vector<AnswerBundle> answer_all(const Scheme& scheme, const EncodedDatabase& db,
                                     const QueryState& state) {
  std::vector<AnswerBundle> out;
  for (const auto& q : state.queries) out.push_back(scheme.answer(db, q));
  return out;
}

TEST(Variants, NamesRoundTrip) {
  for (std::uint8_t id = 0; id <= 5; ++id) {
    Variant v = variant_from_id(id);
    EXPECT_EQ(scheme_id(v), id);
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("mv-3server"), ParameterError);
  EXPECT_THROW(variant_from_id(9), ParameterError);
}

TEST(SchemeConfig, ValidateRejectsInconsistentSettings) {
  SchemeConfig cfg = SchemeConfig::mv_2server();
  EXPECT_NO_THROW(cfg.validate());
  cfg.t_values = {0, 6};  // equal mod m
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = SchemeConfig::mv_2server();
  cfg.s = {1, 2, 4};
  EXPECT_THROW(cfg.validate(), ParameterError);
  EXPECT_THROW(SchemeConfig::baseline_cubic(7, 1, 1).validate(), ParameterError);
  EXPECT_THROW(SchemeConfig::baseline_cubic(3, 1, 2).validate(), ParameterError);
  EXPECT_NO_THROW(SchemeConfig::mv_kserver(kP235).validate());
  EXPECT_EQ(SchemeConfig::mv_kserver(kP235).servers, 4u);
}

TEST(CheckFamily, RejectsForeignModulusAndS) {
  const std::vector<std::uint32_t> wide = {1, 2, 3, 4, 5};
  MVFamily f = search_family(6, 5, wide, 12, 3);
  bool has_outside = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto ip = testing::dot_mod(f.u[i], f.v[j], 6);
      has_outside = has_outside || (i != j && (ip == 2 || ip == 5));
    }
  }
  f.s = wide;
  EXPECT_NO_THROW(check_family(SchemeConfig::mv_2server_order2(), f));
  EXPECT_THROW(check_family(SchemeConfig::mv_2server(), f), ParameterError);
  EXPECT_THROW(Scheme(SchemeConfig::mv_kserver(kP235), small_family(3)), ParameterError);
  EXPECT_TRUE(has_outside);
}

TEST(QueryGen, FirstServerSeesZAndSeedIsReproducible) {
  SchemeConfig cfg = SchemeConfig::mv_2server();
  MVFamily f = small_family(4);
  std::mt19937_64 a(5), b(5);
  QueryState s1 = query_gen(cfg, f, 3, a);
  QueryState s2 = query_gen(cfg, f, 3, b);
  EXPECT_EQ(s1.queries, s2.queries);
  EXPECT_EQ(s1.queries[0], s1.z);
  for (std::size_t c = 0; c < f.k; ++c) {
    EXPECT_EQ(s1.queries[1][c], (s1.z[c] + f.v[3][c]) % 6);
  }
}

TEST(QueryGen, EachServerSeesEveryPointOnceOverAllZ) {
  SchemeConfig cfg = SchemeConfig::mv_2server();
  MVFamily f = small_family(2);
  for (std::size_t tau = 0; tau < f.size(); ++tau) {
    std::vector<std::map<ZmVector, int>> seen(2);
    for (const auto& z : testing::all_vectors(2, 6)) {
      QueryState st = query_from_randomness(cfg, f, tau, z);
      for (std::size_t s = 0; s < 2; ++s) ++seen[s][st.queries[s]];
    }
    for (const auto& hist : seen) {
      EXPECT_EQ(hist.size(), 36u);
      for (const auto& [q, count] : hist) EXPECT_EQ(count, 1);
    }
  }
}

TEST(ServerAnswer, MatchesEncoderAndIsStateless) {
  std::mt19937_64 rng(41);
  Scheme scheme(SchemeConfig::mv_2server(), small_family(4));
  auto bits = testing::random_symbols(rng, 16, 2);
  EncodedDatabase db = scheme.encode_database(bits);
  ZmVector q = testing::random_vector(rng, 4, 6);
  AnswerBundle a = scheme.answer(db, q);
  EXPECT_EQ(a, scheme.answer(db, q));
  EXPECT_EQ(coeffs_of(a.f0), testing::direct_eval(bits, scheme.family(), q));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(coeffs_of(a.f1[j]), testing::direct_eval_f1(bits, scheme.family(), q, j));
  }
  EncodedDatabase empty = scheme.encode_database(std::vector<std::uint32_t>(16, 0));
  AnswerBundle z = scheme.answer(empty, q);
  EXPECT_TRUE(z.f0.is_zero());
  for (const auto& e : z.f1) EXPECT_TRUE(e.is_zero());
}

TEST(LineCoefficients, StructureForThreeElementS) {
  // Brute force c_l: only l in {0} u S occur and c_0 = a_tau g^{<u_tau, z>}.
  std::mt19937_64 rng(42);
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  MVFamily f = search_family(6, 6, s6, 16, 8);
  for (int t = 0; t < 100; ++t) {
    auto symbols = testing::random_symbols(rng, f.size(), 6);
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    const std::size_t tau = pick(rng);
    ZmVector z = testing::random_vector(rng, f.k, 6);
    auto c = testing::line_coefficients(symbols, f, tau, z);
    EXPECT_EQ(c[2], testing::Coeffs(6, 0));
    EXPECT_EQ(c[5], testing::Coeffs(6, 0));
    EXPECT_EQ(RingElem(6, 6, c[0]),
              gamma_power(testing::dot_mod(f.u[tau], z, 6), 6, 6).scaled(symbols[tau]));
  }
}

TEST(LineCoefficients, DirectionalDerivativeIdentity) {
  // sum_l l c_l g^{t l} == <F^(1)(g^{z + t v}), v>.
  std::mt19937_64 rng(43);
  MVFamily f = small_family(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto symbols = testing::random_symbols(rng, f.size(), 6);
    EncodedDatabase db = encode(symbols, f);
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    const std::size_t tau = pick(rng);
    ZmVector z = testing::random_vector(rng, f.k, 6);
    auto c = testing::line_coefficients(symbols, f, tau, z);
    for (std::int64_t t = 0; t < 6; ++t) {
      RingElem lhs(6, 6);
      for (std::uint32_t l = 0; l < 6; ++l) {
        lhs += RingElem(6, 6, c[l]).shifted(t * l).scaled(l);
      }
      ZmVector w(f.k);
      for (std::size_t j = 0; j < f.k; ++j) w[j] = (z[j] + t * f.v[tau][j]) % 6;
      auto f1 = eval_f1(db, w);
      RingElem rhs(6, 6);
      for (std::size_t j = 0; j < f.k; ++j) rhs += f1[j].scaled(f.v[tau][j]);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(TwoServer, ZeroAndAllOnesExhaustive) {
  Scheme scheme(SchemeConfig::mv_2server(), small_family(2));
  EncodedDatabase zeros = scheme.encode_database(std::vector<std::uint32_t>(4, 0));
  EncodedDatabase ones = scheme.encode_database(std::vector<std::uint32_t>(4, 1));
  for (std::size_t tau = 0; tau < 4; ++tau) {
    for (const auto& z : testing::all_vectors(2, 6)) {
      QueryState st = scheme.query_with(tau, z);
      EXPECT_EQ(scheme.reconstruct(st, answer_all(scheme, zeros, st)), 0u);
      EXPECT_EQ(scheme.reconstruct(st, answer_all(scheme, ones, st)), 1u);
    }
  }
}

TEST(TwoServer, RandomDatabases) {
  std::mt19937_64 rng(44);
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  Scheme scheme(SchemeConfig::mv_2server(), search_family(6, 8, s6, 20, 2));
  for (int d = 0; d < 10; ++d) {
    auto bits = testing::random_symbols(rng, 20, 2);
    EncodedDatabase db = scheme.encode_database(bits);
    for (std::size_t tau = 0; tau < 20; ++tau) {
      EXPECT_EQ(scheme.retrieve_local(db, tau, rng), bits[tau]);
    }
  }
}

TEST(TwoServer, RejectsNonBitDatabaseAndBadAnswers) {
  Scheme scheme(SchemeConfig::mv_2server(), small_family(3));
  std::vector<std::uint32_t> bad = {0, 1, 2};
  EXPECT_THROW(scheme.encode_database(bad), ParameterError);
  std::mt19937_64 rng(45);
  QueryState st = scheme.query(0, rng);
  std::vector<AnswerBundle> one;
  one.push_back(scheme.answer(scheme.encode_database(std::vector<std::uint32_t>(9, 1)),
                              st.queries[0]));
  EXPECT_THROW(scheme.reconstruct(st, one), ProtocolError);
}

TEST(Homomorphic, BothTargetsRecoverBits) {
  std::mt19937_64 rng(46);
  for (std::uint32_t target : {6u, 3u}) {
    SchemeConfig cfg = SchemeConfig::mv_2server_hom(target);
    Scheme scheme(cfg, small_family(4));
    EXPECT_EQ(scheme.answer_bytes(), 5u);
    for (int d = 0; d < 10; ++d) {
      auto bits = testing::random_symbols(rng, 16, 2);
      EncodedDatabase db = scheme.encode_database(bits);
      for (std::size_t tau = 0; tau < 16; ++tau) {
        EXPECT_EQ(scheme.retrieve_local(db, tau, rng), bits[tau]) << "target " << target;
      }
    }
  }
}

TEST(Homomorphic, ImageMatrixDeterminant) {
  EXPECT_EQ(determinant(build_matrix(SchemeConfig::mv_2server_hom(6))),
            as_ring_scalar(ZmScalar(2, 6)));
  EXPECT_FALSE(determinant(build_matrix(SchemeConfig::mv_2server_hom(3))).is_zero());
}

TEST(SecondOrder, RecoversWithWideInnerProducts) {
  std::mt19937_64 rng(47);
  const std::vector<std::uint32_t> wide = {1, 2, 3, 4, 5};
  MVFamily f = search_family(6, 6, wide, 16, 6);
  Scheme scheme(SchemeConfig::mv_2server_order2(), f);
  EXPECT_EQ(scheme.answer_bytes(), (1 + 6 + 36) * 6u);
  for (int d = 0; d < 10; ++d) {
    auto bits = testing::random_symbols(rng, f.size(), 2);
    EncodedDatabase db = scheme.encode_database(bits);
    for (std::size_t tau = 0; tau < f.size(); ++tau) {
      EXPECT_EQ(scheme.retrieve_local(db, tau, rng), bits[tau]);
    }
  }
  EncodedDatabase zeros = scheme.encode_database(std::vector<std::uint32_t>(f.size(), 0));
  EXPECT_EQ(scheme.retrieve_local(zeros, 0, rng), 0u);
}

TEST(SecondOrder, AgreesWithFirstOrderOnNarrowFamilies) {
  std::mt19937_64 rng(48);
  MVFamily f = small_family(3);
  Scheme first(SchemeConfig::mv_2server(), f);
  Scheme second(SchemeConfig::mv_2server_order2(), f);
  auto bits = testing::random_symbols(rng, f.size(), 2);
  EncodedDatabase db = first.encode_database(bits);
  for (std::size_t tau = 0; tau < f.size(); ++tau) {
    ZmVector z = testing::random_vector(rng, 3, 6);
    QueryState a = first.query_with(tau, z);
    QueryState b = second.query_with(tau, z);
    EXPECT_EQ(first.reconstruct(a, answer_all(first, db, a)),
              second.reconstruct(b, answer_all(second, db, b)));
  }
}

TEST(SecondOrder, MissingSecondDerivativeIsProtocolError) {
  Scheme scheme(SchemeConfig::mv_2server_order2(), small_family(2));
  EncodedDatabase db = scheme.encode_database(std::vector<std::uint32_t>(4, 1));
  QueryState st = scheme.query_with(1, {0, 0});
  auto answers = answer_all(scheme, db, st);
  answers[1].f2.reset();
  EXPECT_THROW(scheme.reconstruct(st, answers), ProtocolError);
}

TEST(Lambda, SixModulusExample) {
  LambdaVector lambda = lambda_vector(SchemeConfig::mv_kserver(kP23));
  ASSERT_EQ(lambda.f.degree(), 1);
  EXPECT_EQ(lambda.f.coeff(0), RingElem(6, 6, {0, 0, 0, 2, 3}));
  EXPECT_EQ(lambda.f.coeff(1), RingElem::one(6, 6));
  EXPECT_EQ(lambda.mu, RingElem(6, 6, {1, 0, 0, 2, 3}));
  EXPECT_EQ(reduce_mod_prime(lambda.mu, 2), RingElem(2, 6, {1, 0, 0, 0, 1}));
  EXPECT_EQ(reduce_mod_prime(lambda.mu, 3), RingElem(3, 6, {1, 0, 0, 2}));
  ASSERT_EQ(lambda.entries.size(), 4u);
  EXPECT_EQ(lambda.entries[1], -lambda.entries[0]);

  // Oracle: explicit lambda M.
  RingMatrix mat = build_matrix(SchemeConfig::mv_kserver(kP23));
  for (std::size_t c = 0; c < 4; ++c) {
    RingElem acc(6, 6);
    for (std::size_t i = 0; i < 4; ++i) acc += lambda.entries[i] * mat.at(i, c);
    EXPECT_EQ(acc, c == 0 ? lambda.mu : RingElem(6, 6));
  }
}

TEST(Lambda, ThirtyModulus) {
  SchemeConfig cfg = SchemeConfig::mv_kserver(kP235);
  LambdaVector lambda = lambda_vector(cfg);
  EXPECT_EQ(lambda.f.degree(), 3);
  RingMatrix mat = build_matrix(cfg);
  ASSERT_EQ(mat.size(), 8u);
  auto prod = mat.apply_left(lambda.entries);
  EXPECT_EQ(prod[0], lambda.mu);
  for (std::size_t c = 1; c < 8; ++c) EXPECT_TRUE(prod[c].is_zero());
  for (std::uint32_t l : cfg.s) {
    RingElem at = lambda.f.evaluate(gamma_power(l, 30, 30));
    EXPECT_TRUE((at - at.scaled(l)).is_zero()) << "l=" << l;
  }
  for (std::uint32_t p : kP235) EXPECT_FALSE(reduce_mod_prime(lambda.mu, p).is_zero());
}

TEST(KServer, SixModulusSymbols) {
  std::mt19937_64 rng(49);
  Scheme scheme(SchemeConfig::mv_kserver(kP23), small_family(4));
  for (int d = 0; d < 10; ++d) {
    auto symbols = testing::random_symbols(rng, 16, 6);
    EncodedDatabase db = scheme.encode_database(symbols);
    for (std::size_t tau = 0; tau < 16; ++tau) {
      EXPECT_EQ(scheme.retrieve_local(db, tau, rng), symbols[tau]);
    }
  }
}

TEST(KServer, ThirtyModulusSymbols) {
  std::mt19937_64 rng(50);
  Scheme scheme(SchemeConfig::mv_kserver(kP235), product_family(kP235, 2));
  EXPECT_EQ(scheme.config().servers, 4u);
  for (int d = 0; d < 10; ++d) {
    auto symbols = testing::random_symbols(rng, 8, 30);
    EncodedDatabase db = scheme.encode_database(symbols);
    for (std::size_t tau = 0; tau < 8; ++tau) {
      EXPECT_EQ(scheme.retrieve_local(db, tau, rng), symbols[tau]);
    }
  }
  EncodedDatabase zeros = scheme.encode_database(std::vector<std::uint32_t>(8, 0));
  EXPECT_EQ(scheme.retrieve_local(zeros, 3, rng), 0u);
}

TEST(Scheme, BaselineConfigIsRejected) {
  EXPECT_THROW(Scheme(SchemeConfig::baseline_cubic(), small_family(3)), ParameterError);
}

TEST(Scheme, AnswerSizes) {
  MVFamily f = small_family(5);
  EXPECT_EQ(Scheme(SchemeConfig::mv_2server(), f).answer_bytes(), 6u * 6u);
  EXPECT_EQ(Scheme(SchemeConfig::mv_2server(), f).query_bytes(), 5u);
  EXPECT_EQ(Scheme(SchemeConfig::mv_kserver(kP23), f).answer_bytes(), 6u * 6u);
}

}  // namespace
}  // namespace mvpir
