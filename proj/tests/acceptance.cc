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

// Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
// limit. Exits nonzero if any criterion fails.

#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>
#include <arpa/inet.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mvpir/baseline.h"
#include "mvpir/cli/bench.h"
#include "mvpir/errors.h"
#include "mvpir/mv_family.h"
#include "mvpir/net/audit.h"
#include "mvpir/net/client.h"
#include "mvpir/net/server.h"
#include "mvpir/net/session.h"
#include "mvpir/net/wire.h"
#include "mvpir/ring_matrix.h"
#include "mvpir/scheme.h"
#include "oracle.h"

namespace mvpir {
namespace {

const std::vector<std::uint32_t> kP23 = {2, 3};
const std::vector<std::uint32_t> kP235 = {2, 3, 5};
const std::vector<std::uint32_t> kS6 = {1, 3, 4};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

// ----------------------------------------------------------------- criteria

std::string determinant_first_order() {
  RingElem det = determinant(build_matrix(SchemeConfig::mv_2server()));
  require(det == RingElem(6, 6, {0, 2, 0, 3, 4, 3}), "det = " + det.to_string());
  return "det = " + det.to_string();
}

std::string determinant_second_order() {
  RingElem det = determinant(build_matrix(SchemeConfig::mv_2server_order2()));
  require(det == RingElem(6, 6, {4, 0, 0, 2}), "det = " + det.to_string());
  return "det = " + det.to_string();
}

std::string homomorphic_images() {
  RingElem det = determinant(build_matrix(SchemeConfig::mv_2server()));
  ZmScalar z6 = hom_apply(det, ZmScalar(-1, 6));
  ZmScalar f3 = hom_apply(det, ZmScalar(-1, 3));
  require(z6.value() == 2, "Z_6 image " + std::to_string(z6.value()));
  require(f3.value() != 0, "F_3 image vanishes");
  // The image matrices used by the homomorphic variants agree.
  require(determinant(build_matrix(SchemeConfig::mv_2server_hom(6))) == as_ring_scalar(z6),
          "Z_6 image matrix determinant");
  require(determinant(build_matrix(SchemeConfig::mv_2server_hom(3))) == as_ring_scalar(f3),
          "F_3 image matrix determinant");
  return "Z_6 -> " + std::to_string(z6.value()) + ", F_3 -> " + std::to_string(f3.value());
}

std::string adjugate_identity() {
  std::mt19937_64 rng(0xad1);
  for (int t = 0; t < 200; ++t) {
    RingMatrix mat = testing::random_matrix(rng, 4, 6, 6);
    RingMatrix want = RingMatrix::scalar(4, determinant(mat));
    RingMatrix adj = adjugate(mat);
    require(mat * adj == want && adj * mat == want, "random 4x4 #" + std::to_string(t));
  }
  std::vector<RingElem> all;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) all.push_back(RingElem(2, 2, {a, b}));
  }
  int exhaustive = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (const auto& c : all) {
        for (const auto& d : all) {
          RingMatrix mat(2, 2, 2);
          mat.set(0, 0, a);
          mat.set(0, 1, b);
          mat.set(1, 0, c);
          mat.set(1, 1, d);
          RingMatrix want = RingMatrix::scalar(2, determinant(mat));
          RingMatrix adj = adjugate(mat);
          require(mat * adj == want && adj * mat == want, "2x2 over R_{2,2}");
          ++exhaustive;
        }
      }
    }
  }
  return "200 random 4x4 over R_{6,6}, " + std::to_string(exhaustive) + " 2x2 over R_{2,2}";
}

std::string lambda_identities() {
  std::string detail;
  for (const auto& primes : {kP23, kP235}) {
    SchemeConfig cfg = SchemeConfig::mv_kserver(primes);
    LambdaVector lambda = lambda_vector(cfg);
    auto prod = build_matrix(cfg).apply_left(lambda.entries);
    require(prod[0] == lambda.mu, "first entry of lambda M");
    for (std::size_t j = 1; j < prod.size(); ++j) require(prod[j].is_zero(), "lambda M tail");
    for (std::uint32_t p : primes) {
      require(!reduce_mod_prime(lambda.mu, p).is_zero(), "mu mod " + std::to_string(p));
    }
    for (std::uint32_t l : cfg.s) {
      RingElem at = lambda.f.evaluate(gamma_power(l, cfg.m, cfg.m));
      require((at - at.scaled(l)).is_zero(), "h(" + std::to_string(l) + ")");
    }
    detail += (detail.empty() ? "" : "; ") + std::string("m=") + std::to_string(cfg.m) +
              " (q=" + std::to_string(cfg.servers) + ")";
  }
  return detail;
}

// Runs dbs x taus x z_per_tau retrievals and checks every symbol.
std::size_t correctness_harness(const Scheme& scheme, std::size_t dbs, std::size_t z_per_tau,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const MVFamily& f = scheme.family();
  std::size_t runs = 0;
  for (std::size_t d = 0; d < dbs; ++d) {
    auto symbols = testing::random_symbols(rng, f.size(), scheme.config().alphabet());
    EncodedDatabase db = scheme.encode_database(symbols);
    for (std::size_t tau = 0; tau < f.size(); ++tau) {
      for (std::size_t t = 0; t < z_per_tau; ++t) {
        QueryState st = scheme.query(tau, rng);
        std::vector<AnswerBundle> answers;
        for (const auto& q : st.queries) answers.push_back(scheme.answer(db, q));
        std::uint32_t got = scheme.reconstruct(st, answers);
        require(got == symbols[tau], "db " + std::to_string(d) + " tau " + std::to_string(tau) +
                                         ": got " + std::to_string(got) + " want " +
                                         std::to_string(symbols[tau]));
        ++runs;
      }
    }
  }
  return runs;
}

std::size_t exhaustive_small(const Scheme& scheme, std::size_t dbs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const MVFamily& f = scheme.family();
  std::size_t runs = 0;
  for (std::size_t d = 0; d < dbs; ++d) {
    auto symbols = testing::random_symbols(rng, f.size(), scheme.config().alphabet());
    EncodedDatabase db = scheme.encode_database(symbols);
    for (std::size_t tau = 0; tau < f.size(); ++tau) {
      for (const auto& z : testing::all_vectors(f.k, f.m)) {
        QueryState st = scheme.query_with(tau, z);
        std::vector<AnswerBundle> answers;
        for (const auto& q : st.queries) answers.push_back(scheme.answer(db, q));
        require(scheme.reconstruct(st, answers) == symbols[tau], "exhaustive z, k=2");
        ++runs;
      }
    }
  }
  return runs;
}

std::string two_server_correctness() {
  MVFamily f = search_family(6, 8, kS6, 24, 0x6a);
  require(validate_family(f) && f.k <= 8 && f.size() >= 20, "family shape");
  Scheme scheme(SchemeConfig::mv_2server(), f);
  std::size_t runs = correctness_harness(scheme, 50, 100, 0x6b);
  Scheme small(SchemeConfig::mv_2server(), search_family(6, 2, kS6, 4, 0x6c));
  std::size_t exhaustive = exhaustive_small(small, 50, 0x6d);
  return "k=8 n=" + std::to_string(f.size()) + ": " + std::to_string(runs) +
         " retrievals; k=2 exhaustive z: " + std::to_string(exhaustive);
}

std::string second_order_correctness() {
  const std::vector<std::uint32_t> wide = {1, 2, 3, 4, 5};
  MVFamily f = search_family(6, 8, wide, 24, 0x7a);
  std::set<std::uint32_t> seen;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (i != j) seen.insert(static_cast<std::uint32_t>(testing::dot_mod(f.u[i], f.v[j], 6)));
    }
  }
  require(seen == std::set<std::uint32_t>(wide.begin(), wide.end()),
          "off-diagonal inner products do not cover Z_6 \\ {0}");
  Scheme scheme(SchemeConfig::mv_2server_order2(), f);
  std::size_t runs = correctness_harness(scheme, 50, 100, 0x7b);
  MVFamily f2 = search_family(6, 2, wide, 5, 0x7c);
  Scheme small(SchemeConfig::mv_2server_order2(), f2);
  std::size_t exhaustive = exhaustive_small(small, 50, 0x7d);
  return "k=8 n=" + std::to_string(f.size()) + ", products {1..5}: " + std::to_string(runs) +
         " retrievals; k=2 exhaustive z: " + std::to_string(exhaustive);
}

std::string kserver_correctness() {
  MVFamily f = search_family(30, 8, crt_residue_set(kP235), 16, 0x8a);
  require(validate_family(f) && f.size() >= 8, "family shape");
  Scheme scheme(SchemeConfig::mv_kserver(kP235), f);
  require(scheme.config().servers == 4, "server count");
  std::size_t runs = correctness_harness(scheme, 50, 20, 0x8b);
  return "m=30 q=4 k=8 n=" + std::to_string(f.size()) + ": " + std::to_string(runs) +
         " Z_30 retrievals";
}

std::string exact_privacy() {
  std::size_t audits = 0;
  for (std::size_t k : {2u, 3u}) {
    for (Variant v : {Variant::kMv2Server, Variant::kMv2ServerHomZ6, Variant::kMv2ServerHomF3,
                      Variant::kMv2ServerOrder2, Variant::kMvKServer}) {
      Scheme scheme(SchemeConfig::for_variant(v, kP23), product_family(kP23, k));
      std::vector<std::size_t> taus(scheme.family().size());
      std::iota(taus.begin(), taus.end(), 0);
      net::AuditReport report = net::privacy_audit(scheme, taus);
      require(report.space == (k == 2 ? 36u : 216u), "coin space");
      require(report.is_private(), std::string(variant_name(v)) + " k=" + std::to_string(k) +
                                       " max TV " + std::to_string(report.max_tv()));
      ++audits;
    }
  }
  // The remaining variants at their own moduli.
  Scheme wide(SchemeConfig::mv_kserver(kP235), product_family(kP235, 2));
  std::vector<std::size_t> all8(8);
  std::iota(all8.begin(), all8.end(), 0);
  require(net::privacy_audit(wide, all8).is_private(), "mv-kserver m=30");
  std::vector<std::uint32_t> bits(4, 1);
  BaselineScheme baseline(bits, 4);
  std::vector<std::size_t> all4 = {0, 1, 2, 3};
  require(net::privacy_audit(baseline, all4).is_private(), "baseline-cubic");
  return std::to_string(audits + 2) + " audits, every TV distance 0";
}

std::string communication_scaling() {
  // Measured over TCP: the downlink depends on k only.
  std::string detail;
  for (std::size_t k : {4u, 7u}) {
    MVFamily full = product_family(kP23, k);
    for (std::size_t n : {std::size_t{1}, k, full.size()}) {
      auto scheme = std::make_shared<const Scheme>(SchemeConfig::mv_2server(),
                                                   truncate_family(full, n));
      std::mt19937_64 rng(0xa0 + n);
      auto bits = testing::random_symbols(rng, n, 2);
      auto ctx = std::make_shared<const net::ServingContext>(*scheme,
                                                             scheme->encode_database(bits));
      net::PirServer s0(ctx), s1(ctx);
      std::vector<net::ServerAddress> addrs = {{"127.0.0.1", s0.start("127.0.0.1", 0)},
                                               {"127.0.0.1", s1.start("127.0.0.1", 0)}};
      net::PirClient client(scheme);
      net::Retrieval r = client.retrieve(addrs, n - 1, rng);
      require(r.symbol == bits[n - 1], "wrong bit over TCP");
      for (const auto& c : r.cost.per_server) {
        require(c.bytes_down == (k + 1) * 6, "downlink " + std::to_string(c.bytes_down) +
                                                  " at k=" + std::to_string(k) +
                                                  " n=" + std::to_string(n));
        require(c.bytes_up == k, "uplink");
      }
    }
    detail += "k=" + std::to_string(k) + ": " + std::to_string((k + 1) * 6) + " B/server; ";
  }
  std::vector<Variant> variants = {Variant::kBaselineCubic};
  std::vector<std::size_t> ns = {56, 455, 3654};
  auto rows = cli::run_bench(variants, ns, {});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : rows) {
    double x = std::log(double(row.n)), y = std::log(double(row.bytes_total));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "baseline bytes %zu/%zu/%zu, exponent %.3f", rows[0].bytes_total,
                rows[1].bytes_total, rows[2].bytes_total, slope);
  require(std::fabs(slope - 1.0 / 3.0) <= 0.1, buf);
  return detail + buf;
}

// What a correct server must do with `input`: answer only a well-formed,
// in-range QUERY for its own scheme; anything else yields ERROR or close.
bool expect_answer(const std::vector<std::uint8_t>& input, std::uint8_t sid, std::size_t k,
                   std::uint32_t m) {
  if (input.size() < net::kHeaderSize) return false;
  if (!std::equal(net::kMagic.begin(), net::kMagic.end(), input.begin())) return false;
  if (input[4] != net::kWireVersion || input[5] != 1 || input[6] != sid) return false;
  const std::uint32_t len = input[7] | (input[8] << 8) | (input[9] << 16) |
                            (std::uint32_t{input[10]} << 24);
  if (len != k || input.size() < net::kHeaderSize + len) return false;
  for (std::size_t i = 0; i < len; ++i) {
    if (input[net::kHeaderSize + i] >= m) return false;
  }
  return true;
}

// Sends `input` on a fresh connection, half-closes, and collects every frame
// the server writes before it closes. Returns false if the server neither
// closes nor stays well-formed.
bool raw_exchange(std::uint16_t port, const std::vector<std::uint8_t>& input,
                  std::vector<net::Frame>& replies) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return false;
  timeval tv{5, 0};
  setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    return false;
  }
  if (!input.empty()) ::send(fd, input.data(), input.size(), MSG_NOSIGNAL);
  ::shutdown(fd, SHUT_WR);
  std::vector<std::uint8_t> received;
  std::uint8_t buf[4096];
  bool closed = false;
  for (;;) {
    ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n == 0) {
      closed = true;
      break;
    }
    if (n < 0) break;  // timeout or reset
    received.insert(received.end(), buf, buf + n);
  }
  ::close(fd);
  std::size_t off = 0;
  while (off < received.size()) {
    net::DecodeResult r = net::decode_frame(std::span(received).subspan(off));
    if (r.status != net::DecodeStatus::kOk) return false;
    replies.push_back(std::move(r.frame));
    off += r.consumed;
  }
  return closed;
}

std::string wire_robustness() {
  std::mt19937_64 rng(0xb1);
  auto scheme = std::make_shared<const Scheme>(SchemeConfig::mv_2server(),
                                               product_family(kP23, 4));
  auto bits = testing::random_symbols(rng, 16, 2);
  auto ctx = std::make_shared<const net::ServingContext>(*scheme, scheme->encode_database(bits));
  const std::uint8_t sid = scheme_id(Variant::kMv2Server);

  std::size_t answered = 0, rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    net::Frame base{net::kWireVersion, net::MessageType::kQuery, sid, {}};
    base.body.resize(rng() % 3 == 0 ? rng() % 12 : 4);
    for (auto& b : base.body) b = static_cast<std::uint8_t>(rng() % 8);
    std::vector<std::uint8_t> input = net::encode_frame(base);
    switch (rng() % 4) {
      case 0:  // flip bytes anywhere
        for (int f = 0; f < 1 + int(rng() % 3); ++f) input[rng() % input.size()] ^= rng() & 0xff;
        break;
      case 1:  // truncate
        input.resize(rng() % input.size());
        break;
      case 2:  // pure noise
        input.resize(rng() % 32);
        for (auto& b : input) b = static_cast<std::uint8_t>(rng());
        break;
      default:  // hostile header fields
        input[4 + rng() % 7] = static_cast<std::uint8_t>(rng());
        break;
    }
    net::ServerSession session(ctx);
    net::ServerSession::Step step = session.feed(input);
    const bool want_answer = expect_answer(input, sid, 4, 6);
    bool got_answer = false;
    for (const auto& reply : step.replies) {
      if (reply.type == net::MessageType::kAnswer) {
        got_answer = true;
      } else {
        require(reply.type == net::MessageType::kError, "reply that is neither ANSWER nor ERROR");
        net::decode_error(reply.body);
      }
    }
    require(got_answer == want_answer, "fuzz case " + std::to_string(i) + " misclassified");
    if (got_answer) {
      ++answered;
    } else {
      ++rejected;
    }
  }

  // Valid frames round-trip byte-exactly.
  for (int i = 0; i < 1000; ++i) {
    net::Frame f;
    f.type = static_cast<net::MessageType>(1 + rng() % 4);
    f.scheme_id = static_cast<std::uint8_t>(rng());
    f.body.resize(rng() % 300);
    for (auto& b : f.body) b = static_cast<std::uint8_t>(rng());
    auto bytes = net::encode_frame(f);
    net::DecodeResult r = net::decode_frame(bytes);
    require(r.status == net::DecodeStatus::kOk && r.frame == f &&
                net::encode_frame(r.frame) == bytes,
            "round trip");
  }

  // Over TCP every connection ends in a close, with only HELLO, ERROR and
  // (for still-valid queries) ANSWER frames on the way.
  net::PirServer s0(ctx), s1(ctx);
  std::vector<net::ServerAddress> addrs = {{"127.0.0.1", s0.start("127.0.0.1", 0)},
                                           {"127.0.0.1", s1.start("127.0.0.1", 0)}};
  std::size_t tcp_cases = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::uint8_t> input(rng() % 40);
    for (auto& b : input) b = static_cast<std::uint8_t>(rng());
    if (i % 2 == 0 && input.size() >= net::kHeaderSize) {
      std::copy(net::kMagic.begin(), net::kMagic.end(), input.begin());
      input[4] = net::kWireVersion;
    }
    std::vector<net::Frame> replies;
    require(raw_exchange(addrs[0].port, input, replies), "TCP fuzz case did not end in a close");
    require(!replies.empty() && replies[0].type == net::MessageType::kHello, "missing HELLO");
    for (std::size_t j = 1; j < replies.size(); ++j) {
      const bool valid = replies[j].type == net::MessageType::kError ||
                         (replies[j].type == net::MessageType::kAnswer &&
                          expect_answer(input, sid, 4, 6));
      require(valid, "unexpected reply over TCP");
    }
    ++tcp_cases;
  }

  // The server still answers afterwards.
  net::PirClient client(scheme);
  for (std::size_t tau = 0; tau < bits.size(); ++tau) {
    require(client.retrieve(addrs, tau, rng).symbol == bits[tau], "retrieval after fuzz");
  }
  return "10000 fuzzed inputs: " + std::to_string(rejected) + " rejected, " +
         std::to_string(answered) + " still-valid queries answered; " +
         std::to_string(tcp_cases) + " TCP cases closed cleanly; 1000 round trips";
}

std::string coefficient_structure() {
  std::mt19937_64 rng(0xc1);
  const std::vector<MVFamily> families = {search_family(6, 8, kS6, 24, 0xc2),
                                          search_family(6, 5, kS6, 12, 0xc3),
                                          product_family(kP23, 6)};
  SchemeConfig cfg = SchemeConfig::mv_2server();
  RingMatrix mat = build_matrix(cfg);
  for (int t = 0; t < 1000; ++t) {
    const MVFamily& f = families[t % families.size()];
    Scheme scheme(cfg, f);
    auto symbols = testing::random_symbols(rng, f.size(), 2);
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    const std::size_t tau = pick(rng);
    ZmVector z = testing::random_vector(rng, f.k, 6);
    auto c = testing::line_coefficients(symbols, f, tau, z);
    require(c[2] == testing::Coeffs(6, 0) && c[5] == testing::Coeffs(6, 0), "c_2 or c_5 != 0");
    RingElem c0 = gamma_power(testing::dot_mod(f.u[tau], z, 6), 6, 6).scaled(symbols[tau]);
    require(RingElem(6, 6, c[0]) == c0, "c_0 != a_tau g^<u_tau, z>");
    // The servers' answers are M times (c_0, c_1, c_3, c_4).
    EncodedDatabase db = encode(symbols, f);
    QueryState st = scheme.query_with(tau, z);
    std::vector<AnswerBundle> answers;
    for (const auto& q : st.queries) answers.push_back(scheme.answer(db, q));
    std::vector<RingElem> cs = {RingElem(6, 6, c[0]), RingElem(6, 6, c[1]), RingElem(6, 6, c[3]),
                                RingElem(6, 6, c[4])};
    require(mat.apply(cs) == interpolation_values(cfg, f, st, answers), "M c != b");
  }
  return "1000 (db, tau, z) triples";
}

// ------------------------------------------------------------------- driver

struct Criterion {
  int id;
  const char* name;
  std::chrono::milliseconds limit;
  std::function<std::string()> run;
};

}  // namespace
}  // namespace mvpir

int main() {
  using mvpir::Criterion;
  using namespace std::chrono_literals;
  const std::vector<Criterion> criteria = {
      {1, "determinant identity", 1s, mvpir::determinant_first_order},
      {2, "second-order determinant", 1s, mvpir::determinant_second_order},
      {3, "homomorphism checks", 1s, mvpir::homomorphic_images},
      {4, "adjugate identity", 30s, mvpir::adjugate_identity},
      {5, "lambda vector", 5s, mvpir::lambda_identities},
      {6, "two-server correctness", 120s, mvpir::two_server_correctness},
      {7, "order-2 correctness", 120s, mvpir::second_order_correctness},
      {8, "k-server correctness", 120s, mvpir::kserver_correctness},
      {9, "exact privacy", 60s, mvpir::exact_privacy},
      {10, "communication scaling", 120s, mvpir::communication_scaling},
      {11, "wire robustness", 60s, mvpir::wire_robustness},
      {12, "coefficient structure", 60s, mvpir::coefficient_structure},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    const double limit_s = std::chrono::duration<double>(c.limit).count();
    if (ok && elapsed.count() > limit_s) {
      ok = false;
      detail += " (over the time limit)";
    }
    std::printf("%s %2d %-26s %7.3fs / %5.0fs  %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                elapsed.count(), limit_s, detail.c_str());
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
