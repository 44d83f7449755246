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

// Command-line front end: gen-family, encode, validate, serve, get, audit,
// bench, selftest.

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvpir/baseline.h"
#include "mvpir/cli/bench.h"
#include "mvpir/cli/selftest.h"
#include "mvpir/encoder.h"
#include "mvpir/errors.h"
#include "mvpir/mv_family.h"
#include "mvpir/net/audit.h"
#include "mvpir/net/client.h"
#include "mvpir/net/server.h"
#include "mvpir/net/session.h"
#include "mvpir/scheme.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitCheckFailed = 4;

using mvpir::Variant;

std::string join(const std::vector<std::uint32_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

// Reads whitespace- or comma-separated symbols.
std::vector<std::uint32_t> read_symbol_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mvpir::ParameterError("cannot open " + path);
  std::stringstream text;
  text << in.rdbuf();
  std::string all = text.str();
  for (char& c : all) {
    if (c == ',') c = ' ';
  }
  std::istringstream tokens(all);
  std::vector<std::uint32_t> out;
  std::string tok;
  while (tokens >> tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v > 255) throw mvpir::ParseError("bad symbol '" + tok + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

struct SchemeFlags {
  std::string variant = "mv-2server";
  std::vector<std::uint32_t> primes;
  std::string family_path;

  void add(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "scheme variant")->capture_default_str();
    cmd->add_option("--primes", primes, "primes for mv-kserver (default 2,3)")->delimiter(',');
    cmd->add_option("--family", family_path, "matching-vector family file")->required();
  }

  mvpir::Scheme build() const {
    Variant v = mvpir::parse_variant(variant);
    if (v == Variant::kBaselineCubic) {
      throw mvpir::ParameterError("baseline-cubic runs in-process only (see bench)");
    }
    return mvpir::Scheme(mvpir::SchemeConfig::for_variant(v, primes),
                         mvpir::load_family(family_path));
  }
};

int cmd_gen_family(std::uint32_t m, std::size_t k, std::size_t n,
                   std::vector<std::uint32_t> primes, std::uint64_t seed,
                   const std::string& method, std::uint64_t budget, const std::string& out) {
  if (primes.empty()) primes = {2, 3};
  const auto s = mvpir::crt_residue_set(primes);
  const std::uint32_t product =
      std::accumulate(primes.begin(), primes.end(), 1u, std::multiplies<>());
  if (m == 0) m = product;
  if (m != product) throw mvpir::ParameterError("--m must equal the product of --primes");

  mvpir::MVFamily family;
  if (method == "product") {
    family = mvpir::product_family(primes, k);
    if (family.size() < n) {
      throw mvpir::CapacityError("product family too small", family.size());
    }
    family = mvpir::truncate_family(family, n);
  } else {
    mvpir::SearchOptions opts;
    opts.budget = budget;
    family = mvpir::search_family(m, k, s, n, seed, opts);
  }
  mvpir::save_family(family, out);
  std::cout << "n=" << family.size() << " k=" << family.k << " |S|=" << s.size() << " S={"
            << join(s) << "}\n";
  return kExitOk;
}

int cmd_encode(const SchemeFlags& flags, const std::string& input, std::size_t random_n,
               std::uint64_t seed, const std::string& out) {
  mvpir::Scheme scheme = flags.build();
  std::vector<std::uint32_t> symbols;
  if (!input.empty()) {
    symbols = read_symbol_text(input);
  } else {
    if (random_n == 0) throw mvpir::ParameterError("give --input or --random N");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, scheme.config().alphabet() - 1);
    symbols.resize(random_n);
    for (auto& s : symbols) s = dist(rng);
  }
  mvpir::EncodedDatabase db = scheme.encode_database(symbols);
  mvpir::save_database(symbols, out);
  std::cout << "n=" << symbols.size() << " terms=" << db.terms().size()
            << " alphabet=" << scheme.config().alphabet() << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  try {
    mvpir::MVFamily family = mvpir::load_family(path);
    std::cout << "valid: n=" << family.size() << " k=" << family.k << " m=" << family.m
              << " S={" << join(family.s) << "}\n";
    return kExitOk;
  } catch (const mvpir::IntegrityError& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int cmd_serve(const SchemeFlags& flags, const std::string& db_path, const std::string& listen) {
  mvpir::Scheme scheme = flags.build();
  mvpir::EncodedDatabase db = scheme.encode_database(mvpir::load_database(db_path));
  auto ctx = std::make_shared<const mvpir::net::ServingContext>(std::move(scheme), std::move(db));
  mvpir::net::ServerAddress addr = mvpir::net::parse_address(listen);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  mvpir::net::PirServer server(ctx);
  std::uint16_t port = server.start(addr.host, addr.port);
  std::cout << "listening on " << addr.host << ":" << port << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return kExitOk;
}

int cmd_get(const SchemeFlags& flags, const std::vector<std::string>& servers, std::size_t index,
            std::uint64_t seed) {
  auto scheme = std::make_shared<const mvpir::Scheme>(flags.build());
  std::vector<mvpir::net::ServerAddress> addrs;
  for (const auto& s : servers) addrs.push_back(mvpir::net::parse_address(s));
  if (index >= scheme->family().size()) throw mvpir::ParameterError("--index outside the family");
  std::mt19937_64 rng(seed);
  mvpir::net::PirClient client(scheme);
  mvpir::net::Retrieval r = client.retrieve(addrs, index, rng);
  std::cout << "symbol=" << r.symbol << "\n";
  for (std::size_t i = 0; i < r.cost.per_server.size(); ++i) {
    const auto& c = r.cost.per_server[i];
    std::cout << "server " << i << " bytes_up=" << c.bytes_up << " bytes_down=" << c.bytes_down
              << "\n";
  }
  std::cout << "total=" << r.cost.total() << " framed_total=" << r.cost.framed_total()
            << " k=" << r.cost.k << " n=" << r.cost.n << "\n";
  return kExitOk;
}

int cmd_audit(const SchemeFlags& flags, std::vector<std::size_t> taus, std::uint64_t max_space) {
  mvpir::Scheme scheme = flags.build();
  if (taus.empty()) {
    taus.resize(scheme.family().size());
    std::iota(taus.begin(), taus.end(), 0);
  }
  mvpir::net::AuditReport report = mvpir::net::privacy_audit(scheme, taus, max_space);
  std::cout << "coins=" << report.space << " taus=" << report.taus << "\n";
  for (std::size_t s = 0; s < report.servers; ++s) {
    std::cout << "server " << s << " max_tv=" << report.server_tv_numerator[s] << "/"
              << 2 * report.space << "\n";
  }
  std::cout << (report.is_private() ? "private" : "NOT private") << "\n";
  return report.is_private() ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const std::vector<std::string>& variant_names, const std::vector<std::size_t>& ns,
              mvpir::cli::BenchOptions options, const std::string& out) {
  std::vector<Variant> variants;
  for (const auto& name : variant_names) variants.push_back(mvpir::parse_variant(name));
  auto rows = mvpir::cli::run_bench(variants, ns, options);
  if (out.empty() || out == "-") {
    mvpir::cli::write_csv(std::cout, rows);
  } else {
    std::ofstream file(out);
    if (!file) throw mvpir::ParameterError("cannot write " + out);
    mvpir::cli::write_csv(file, rows);
  }
  return kExitOk;
}

int cmd_selftest(const std::string& family) {
  std::optional<std::filesystem::path> path;
  if (!family.empty()) path = family;
  bool ok = mvpir::cli::print_checks(std::cout, mvpir::cli::run_selftest(path));
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching-vector private information retrieval"};
  app.require_subcommand(1);

  // gen-family
  auto* gen = app.add_subcommand("gen-family", "search for and write a matching-vector family");
  std::uint32_t gen_m = 0;
  std::size_t gen_k = 8, gen_n = 20;
  std::vector<std::uint32_t> gen_primes;
  std::uint64_t gen_seed = 1, gen_budget = mvpir::SearchOptions{}.budget;
  std::string gen_method = "search", gen_out;
  gen->add_option("--m", gen_m, "modulus (defaults to the product of --primes)");
  gen->add_option("--k", gen_k, "vector dimension")->capture_default_str();
  gen->add_option("--n", gen_n, "family size")->capture_default_str();
  gen->add_option("--primes", gen_primes, "distinct primes (default 2,3)")->delimiter(',');
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--method", gen_method)->check(CLI::IsMember({"search", "product"}))
      ->capture_default_str();
  gen->add_option("--budget", gen_budget, "search proposals")->capture_default_str();
  gen->add_option("--out", gen_out)->required();

  // encode
  auto* enc = app.add_subcommand("encode", "check a database against a family and store it");
  SchemeFlags enc_flags;
  enc_flags.add(enc);
  std::string enc_input, enc_out;
  std::size_t enc_random = 0;
  std::uint64_t enc_seed = 1;
  enc->add_option("--input", enc_input, "text file of symbols");
  enc->add_option("--random", enc_random, "generate N random symbols instead");
  enc->add_option("--seed", enc_seed)->capture_default_str();
  enc->add_option("--out", enc_out)->required();

  // validate
  auto* val = app.add_subcommand("validate", "check a family file");
  std::string val_family;
  val->add_option("--family", val_family)->required();

  // serve
  auto* srv = app.add_subcommand("serve", "answer queries over TCP until SIGINT/SIGTERM");
  SchemeFlags srv_flags;
  srv_flags.add(srv);
  std::string srv_db, srv_listen = "127.0.0.1:7070";
  srv->add_option("--db", srv_db)->required();
  srv->add_option("--listen", srv_listen)->capture_default_str();

  // get
  auto* get = app.add_subcommand("get", "retrieve one index from the servers");
  SchemeFlags get_flags;
  get_flags.add(get);
  std::vector<std::string> get_servers;
  std::size_t get_index = 0;
  std::uint64_t get_seed = 1;
  get->add_option("--server", get_servers, "host:port, once per server")->required();
  get->add_option("--index", get_index)->required();
  get->add_option("--seed", get_seed)->capture_default_str();

  // audit
  auto* aud = app.add_subcommand("audit", "exact per-server query distribution check");
  SchemeFlags aud_flags;
  aud_flags.add(aud);
  std::vector<std::size_t> aud_taus;
  std::uint64_t aud_max = 1'000'000;
  aud->add_option("--tau", aud_taus, "indices to compare (default all)")->delimiter(',');
  aud->add_option("--max-space", aud_max)->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "communication cost per (variant, n) as CSV");
  std::vector<std::string> bench_variants = {"mv-2server", "baseline-cubic"};
  std::vector<std::size_t> bench_ns;
  mvpir::cli::BenchOptions bench_opts;
  std::string bench_out;
  bench->add_option("--variants", bench_variants)->delimiter(',')->capture_default_str();
  bench->add_option("--n-list", bench_ns)->delimiter(',');
  bench->add_option("--seed", bench_opts.seed)->capture_default_str();
  bench->add_option("--k", bench_opts.fixed_k, "fixed dimension (0 = smallest that fits)");
  bench->add_option("--kserver-primes", bench_opts.kserver_primes)->delimiter(',');
  bench->add_option("--trials", bench_opts.trials)->capture_default_str();
  bench->add_flag("--timing", bench_opts.timing, "record wall_ms (output no longer byte-stable)");
  bench->add_option("--out", bench_out, "CSV path, '-' for stdout");

  // selftest
  auto* self = app.add_subcommand("selftest", "run the built-in identity checks");
  std::string self_family;
  self->add_option("--family", self_family, "also validate this family file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      return cmd_gen_family(gen_m, gen_k, gen_n, gen_primes, gen_seed, gen_method, gen_budget,
                            gen_out);
    }
    if (*enc) return cmd_encode(enc_flags, enc_input, enc_random, enc_seed, enc_out);
    if (*val) return cmd_validate(val_family);
    if (*srv) return cmd_serve(srv_flags, srv_db, srv_listen);
    if (*get) return cmd_get(get_flags, get_servers, get_index, get_seed);
    if (*aud) return cmd_audit(aud_flags, aud_taus, aud_max);
    if (*bench) return cmd_bench(bench_variants, bench_ns, bench_opts, bench_out);
    if (*self) return cmd_selftest(self_family);
  } catch (const mvpir::CapacityError& e) {
    std::cerr << "error: " << e.what() << " (largest n found: " << e.largest_found() << ")\n";
    return kExitCapacity;
  } catch (const mvpir::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
