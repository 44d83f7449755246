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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mvpir/errors.h"
#include "oracle.h"

namespace mvpir {
namespace {

// O(n^2 k) check written out directly.
bool matching_oracle(const MVFamily& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto ip = static_cast<std::uint32_t>(testing::dot_mod(f.u[i], f.v[j], f.m));
      if (i == j && ip != 0) return false;
      if (i != j && std::find(f.s.begin(), f.s.end(), ip) == f.s.end()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> enumerate_s(std::uint32_t m, const std::vector<std::uint32_t>& ps) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 1; a < m; ++a) {
    bool ok = true;
    for (auto p : ps) ok = ok && (a % p <= 1);
    if (ok) out.push_back(a);
  }
  return out;
}

TEST(CrtResidueSet, SmallCases) {
  std::vector<std::uint32_t> p23 = {2, 3};
  std::vector<std::uint32_t> p235 = {2, 3, 5};
  EXPECT_EQ(crt_residue_set(p23), (std::vector<std::uint32_t>{1, 3, 4}));
  EXPECT_EQ(crt_residue_set(p235), (std::vector<std::uint32_t>{1, 6, 10, 15, 16, 21, 25}));
  EXPECT_EQ(crt_residue_set(p235), enumerate_s(30, p235));
  std::vector<std::uint32_t> p2357 = {2, 3, 5, 7};
  EXPECT_EQ(crt_residue_set(p2357).size() + 1, 16u);
  EXPECT_EQ(crt_residue_set(p2357), enumerate_s(210, p2357));
}

TEST(CrtResidueSet, RejectsBadPrimes) {
  std::vector<std::uint32_t> one = {2};
  std::vector<std::uint32_t> dup = {3, 3};
  std::vector<std::uint32_t> composite = {2, 4};
  EXPECT_THROW(crt_residue_set(one), ParameterError);
  EXPECT_THROW(crt_residue_set(dup), ParameterError);
  EXPECT_THROW(crt_residue_set(composite), ParameterError);
}

TEST(Validate, TrivialAndBroken) {
  MVFamily single{6, 3, {{0, 0, 0}}, {{0, 0, 0}}, {1, 3, 4}};
  EXPECT_TRUE(validate_family(single));

  // <u_0, v_1> = 2, which is not in S.
  MVFamily bad{6, 1, {{1}, {0}}, {{0}, {2}}, {1, 3, 4}};
  auto violation = find_violation(bad);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->i, 0u);
  EXPECT_EQ(violation->j, 1u);
  EXPECT_EQ(violation->inner_product, 2u);
  EXPECT_FALSE(validate_family(bad));
}

TEST(Validate, ShapeErrors) {
  MVFamily ragged{6, 2, {{0, 0}}, {{0}}, {1}};
  EXPECT_THROW(find_violation(ragged), ParameterError);
  MVFamily zero_in_s{6, 1, {{0}}, {{0}}, {0, 1}};
  EXPECT_THROW(find_violation(zero_in_s), ParameterError);
}

TEST(ProductFamily, SizeAndValidity) {
  std::vector<std::uint32_t> p23 = {2, 3};
  std::vector<std::uint32_t> p235 = {2, 3, 5};
  for (std::size_t k = 1; k <= 8; ++k) {
    MVFamily f = product_family(p23, k);
    EXPECT_EQ(f.size(), k * k);
    EXPECT_TRUE(matching_oracle(f)) << "k=" << k;
  }
  MVFamily f30 = product_family(p235, 4);
  EXPECT_EQ(f30.size(), 64u);
  EXPECT_TRUE(matching_oracle(f30));
}

TEST(SearchFamily, SmallTargets) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  MVFamily one = search_family(6, 3, s6, 1, 5);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(testing::dot_mod(one.u[0], one.v[0], 6), 0);

  MVFamily ten = search_family(6, 6, s6, 10, 5);
  EXPECT_EQ(ten.size(), 10u);
  EXPECT_TRUE(matching_oracle(ten));

  MVFamily four = search_family(6, 4, s6, 8, 9);
  EXPECT_TRUE(matching_oracle(four));

  const std::vector<std::uint32_t> p235 = {2, 3, 5};
  MVFamily f30 = search_family(30, 8, crt_residue_set(p235), 8, 3);
  EXPECT_EQ(f30.size(), 8u);
  EXPECT_TRUE(matching_oracle(f30));
}

TEST(SearchFamily, DeterministicInSeed) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  EXPECT_EQ(search_family(6, 6, s6, 12, 77), search_family(6, 6, s6, 12, 77));
  EXPECT_NE(search_family(6, 6, s6, 12, 77), search_family(6, 6, s6, 12, 78));
}

TEST(SearchFamily, ReachesTwentyAtDimensionEight) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  MVFamily f = search_family(6, 8, s6, 24, 1);
  EXPECT_EQ(f.size(), 24u);
  EXPECT_TRUE(matching_oracle(f));
}

TEST(SearchFamily, CapacityErrorReportsLargest) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  SearchOptions opts;
  opts.budget = 2000;
  try {
    search_family(6, 1, s6, 50, 1, opts);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_GE(e.largest_found(), 1u);
    EXPECT_LT(e.largest_found(), 50u);
  }
}

TEST(SearchFamily, EveryGeneratorOutputValidates) {
  const std::vector<std::uint32_t> all_nonzero = {1, 2, 3, 4, 5};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MVFamily f = search_family(6, 5, all_nonzero, 15, seed);
    EXPECT_TRUE(matching_oracle(f));
  }
}

TEST(FamilyFile, RoundTripAndDigest) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  MVFamily f = search_family(6, 5, s6, 12, 4);
  std::stringstream ss;
  write_family(ss, f);
  MVFamily back = read_family(ss);
  EXPECT_EQ(back, f);
  EXPECT_EQ(family_digest(back), family_digest(f));
  MVFamily other = truncate_family(f, 11);
  EXPECT_NE(family_digest(other), family_digest(f));

  auto path = std::filesystem::temp_directory_path() / "mvpir_family_test.mvf";
  save_family(f, path);
  EXPECT_EQ(load_family(path), f);
  std::filesystem::remove(path);
}

TEST(FamilyFile, TruncatedInputIsParseError) {
  const std::vector<std::uint32_t> s6 = {1, 3, 4};
  MVFamily f = search_family(6, 5, s6, 6, 4);
  std::stringstream ss;
  write_family(ss, f);
  std::string text = ss.str();
  std::istringstream cut(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_family(cut), ParseError);
  std::istringstream garbage("not a family");
  EXPECT_THROW(read_family(garbage), ParseError);
}

TEST(FamilyFile, TamperedVectorNamesThePair) {
  MVFamily f = product_family(std::vector<std::uint32_t>{2, 3}, 3);
  // Flip one coordinate of u_4 until the family breaks.
  for (std::uint32_t delta = 1; delta < 6; ++delta) {
    MVFamily bad = f;
    bad.u[4][0] = (bad.u[4][0] + delta) % 6;
    auto violation = find_violation(bad);
    if (!violation) continue;
    std::stringstream ss;
    write_family(ss, bad);
    try {
      read_family(ss);
      FAIL() << "expected IntegrityError";
    } catch (const IntegrityError& e) {
      const std::string msg = e.what();
      EXPECT_NE(msg.find(std::to_string(violation->i)), std::string::npos) << msg;
      EXPECT_NE(msg.find(std::to_string(violation->j)), std::string::npos) << msg;
      EXPECT_EQ(violation->i, 4u);
    }
    return;
  }
  FAIL() << "no tampering broke the family";
}

}  // namespace
}  // namespace mvpir
