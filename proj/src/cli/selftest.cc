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

#include "mvpir/cli/selftest.h"

#include <exception>
#include <functional>
#include <memory>
#include <random>

#include "mvpir/mv_family.h"
#include "mvpir/net/client.h"
#include "mvpir/net/server.h"
#include "mvpir/net/session.h"
#include "mvpir/ring_matrix.h"
#include "mvpir/scheme.h"

namespace mvpir::cli {

namespace {

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  CheckResult result{name, false, ""};
  try {
    result.detail = body();
    result.passed = true;
  } catch (const std::exception& e) {
    result.detail = e.what();
  }
  return result;
}

void expect(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

std::string check_determinant(const SchemeConfig& cfg, const RingElem& want) {
  RingElem det = determinant(build_matrix(cfg));
  expect(det == want, "got " + det.to_string() + ", want " + want.to_string());
  return "det(M) = " + det.to_string();
}

std::string check_hom_images() {
  RingElem det = determinant(build_matrix(SchemeConfig::mv_2server()));
  ZmScalar z6 = hom_apply(det, ZmScalar(-1, 6));
  ZmScalar f3 = hom_apply(det, ZmScalar(-1, 3));
  expect(z6.value() == 2, "image over Z_6 is " + std::to_string(z6.value()));
  expect(f3.value() != 0, "image over F_3 vanishes");
  return "Z_6 image " + std::to_string(z6.value()) + ", F_3 image " + std::to_string(f3.value());
}

std::string check_adjugate() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> coeff(0, 5);
  std::vector<RingMatrix> cases = {build_matrix(SchemeConfig::mv_2server()),
                                   build_matrix(SchemeConfig::mv_2server_order2())};
  for (int t = 0; t < 20; ++t) {
    RingMatrix mat(4, 6, 6);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        std::vector<std::int64_t> c(6);
        for (auto& x : c) x = coeff(rng);
        mat.set(i, j, RingElem(6, 6, c));
      }
    }
    cases.push_back(mat);
  }
  for (const RingMatrix& mat : cases) {
    RingMatrix want = RingMatrix::scalar(mat.size(), determinant(mat));
    expect(mat * adjugate(mat) == want, "M adj(M) != det(M) I");
    expect(adjugate(mat) * mat == want, "adj(M) M != det(M) I");
  }
  return std::to_string(cases.size()) + " matrices";
}

std::string check_lambda(std::vector<std::uint32_t> primes) {
  SchemeConfig cfg = SchemeConfig::mv_kserver(primes);
  LambdaVector lambda = lambda_vector(cfg);
  auto row = lambda.entries;
  auto prod = build_matrix(cfg).apply_left(row);
  expect(prod[0] == lambda.mu, "first entry differs from mu");
  for (std::size_t j = 1; j < prod.size(); ++j) expect(prod[j].is_zero(), "nonzero tail entry");
  for (std::uint32_t p : cfg.primes) {
    expect(!reduce_mod_prime(lambda.mu, p).is_zero(), "mu vanishes mod " + std::to_string(p));
  }
  return "m=" + std::to_string(cfg.m) + ", mu = " + lambda.mu.to_string();
}

std::string check_family_file(const std::filesystem::path& path) {
  MVFamily family = load_family(path);
  return std::to_string(family.size()) + " vectors, k=" + std::to_string(family.k);
}

std::string check_loopback() {
  SchemeConfig cfg = SchemeConfig::mv_2server();
  std::vector<std::uint32_t> primes = {2, 3};
  auto scheme = std::make_shared<const Scheme>(cfg, truncate_family(product_family(primes, 4), 12));
  std::mt19937_64 rng(7);
  std::vector<std::uint32_t> bits(scheme->family().size());
  for (auto& b : bits) b = static_cast<std::uint32_t>(rng() & 1);
  auto ctx = std::make_shared<const net::ServingContext>(*scheme, scheme->encode_database(bits));
  net::PirServer s0(ctx), s1(ctx);
  std::vector<net::ServerAddress> addrs = {{"127.0.0.1", s0.start("127.0.0.1", 0)},
                                           {"127.0.0.1", s1.start("127.0.0.1", 0)}};
  net::PirClient client(scheme);
  std::size_t bytes = 0;
  for (std::size_t tau = 0; tau < bits.size(); ++tau) {
    net::Retrieval r = client.retrieve(addrs, tau, rng);
    expect(r.symbol == bits[tau], "wrong bit at index " + std::to_string(tau));
    bytes = r.cost.total();
  }
  return std::to_string(bits.size()) + " retrievals, " + std::to_string(bytes) +
         " bytes each";
}

}  // namespace

std::vector<CheckResult> run_selftest(const std::optional<std::filesystem::path>& family_path) {
  std::vector<CheckResult> out;
  out.push_back(run_check("determinant mv-2server", [] {
    return check_determinant(SchemeConfig::mv_2server(), RingElem(6, 6, {0, 2, 0, 3, 4, 3}));
  }));
  out.push_back(run_check("determinant mv-2server-order2", [] {
    return check_determinant(SchemeConfig::mv_2server_order2(), RingElem(6, 6, {4, 0, 0, 2}));
  }));
  out.push_back(run_check("homomorphic images", check_hom_images));
  out.push_back(run_check("adjugate identity", check_adjugate));
  out.push_back(run_check("lambda identity m=6", [] { return check_lambda({2, 3}); }));
  out.push_back(run_check("lambda identity m=30", [] { return check_lambda({2, 3, 5}); }));
  if (family_path) {
    out.push_back(run_check("family file", [&] { return check_family_file(*family_path); }));
  }
  out.push_back(run_check("loopback retrieval", check_loopback));
  return out;
}

bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const CheckResult& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  return all;
}

}  // namespace mvpir::cli
