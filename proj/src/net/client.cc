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

#include "mvpir/net/client.h"

#include <charconv>
#include <exception>
#include <future>
#include <optional>

#include "mvpir/errors.h"
#include "mvpir/net/wire.h"
#include "socket_io.h"

namespace mvpir::net {

ServerAddress parse_address(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParameterError("address must look like host:port, got '" + std::string(text) + "'");
  }
  std::string_view host = text.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  std::string_view port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port > 65535) {
    throw ParameterError("bad port in '" + std::string(text) + "'");
  }
  return ServerAddress{std::string(host), static_cast<std::uint16_t>(port)};
}

std::string to_string(const ServerAddress& address) {
  return address.host + ":" + std::to_string(address.port);
}

std::size_t CostReport::total() const {
  std::size_t sum = 0;
  for (const ServerCost& c : per_server) sum += c.bytes_up + c.bytes_down;
  return sum;
}

std::size_t CostReport::framed_total() const {
  std::size_t sum = 0;
  for (const ServerCost& c : per_server) sum += c.framed_up + c.framed_down;
  return sum;
}

PirClient::PirClient(std::shared_ptr<const Scheme> scheme, std::chrono::milliseconds timeout)
    : scheme_(std::move(scheme)), timeout_(timeout) {
  if (!scheme_) throw ParameterError("client needs a scheme");
}

namespace {

struct Exchange {
  std::optional<AnswerBundle> answer;
  ServerCost cost;
};

Exchange exchange_one(const Scheme& scheme, const std::array<std::uint8_t, 32>& digest,
                      const ServerAddress& address, const ZmVector& query,
                      std::chrono::milliseconds timeout) {
  const SchemeConfig& cfg = scheme.config();
  const std::string where = to_string(address);
  detail::Socket sock = detail::connect_to(address.host, address.port, timeout);

  Exchange ex;
  std::size_t wire = 0;
  Frame hello_frame = detail::read_frame(sock, &wire);
  ex.cost.framed_down += wire;
  if (hello_frame.type != MessageType::kHello) {
    throw ProtocolError(where + " did not open with HELLO");
  }
  Hello hello = decode_hello(hello_frame.body);
  if (hello.version != kWireVersion || hello.scheme_id != scheme_id(cfg.variant) ||
      hello.m != cfg.m || hello.k != scheme.family().k) {
    throw ProtocolError(where + " serves a different scheme configuration");
  }
  if (hello.family_digest != digest) {
    throw ProtocolError(where + " serves a different matching-vector family");
  }

  Frame q;
  q.type = MessageType::kQuery;
  q.scheme_id = scheme_id(cfg.variant);
  q.body.assign(query.begin(), query.end());
  std::vector<std::uint8_t> bytes = encode_frame(q);
  if (!detail::send_all(sock, bytes)) throw ProtocolError("cannot send query to " + where);
  ex.cost.bytes_up = q.body.size();
  ex.cost.framed_up = bytes.size();

  Frame reply = detail::read_frame(sock, &wire);
  ex.cost.framed_down += wire;
  if (reply.type == MessageType::kError) {
    ErrorBody err = decode_error(reply.body);
    throw ProtocolError(where + " replied " + error_code_name(err.code) + ": " + err.message);
  }
  if (reply.type != MessageType::kAnswer) throw ProtocolError(where + " sent an unexpected frame");
  ex.cost.bytes_down = reply.body.size();
  try {
    ex.answer = AnswerBundle::deserialize(reply.body, cfg.answer_modulus(), cfg.answer_order(),
                                          scheme.family().k, cfg.needs_f2());
  } catch (const ParseError& e) {
    throw ProtocolError(where + " sent a malformed answer: " + e.what());
  }
  return ex;
}

}  // namespace

Retrieval PirClient::retrieve(std::span<const ServerAddress> servers, std::size_t tau,
                              std::mt19937_64& rng) const {
  const Scheme& scheme = *scheme_;
  const SchemeConfig& cfg = scheme.config();
  if (servers.size() != cfg.servers) {
    throw ProtocolError(std::string(variant_name(cfg.variant)) + " needs exactly " +
                        std::to_string(cfg.servers) + " servers, got " +
                        std::to_string(servers.size()));
  }
  QueryState state = scheme.query(tau, rng);
  const auto digest = family_digest(scheme.family());

  std::vector<std::future<Exchange>> pending;
  pending.reserve(servers.size());
  for (std::size_t i = 0; i < servers.size(); ++i) {
    pending.push_back(std::async(std::launch::async, exchange_one, std::cref(scheme),
                                 std::cref(digest), std::cref(servers[i]),
                                 std::cref(state.queries[i]), timeout_));
  }
  // Wait for every task before reporting so no thread outlives this call.
  std::vector<AnswerBundle> answers;
  Retrieval out;
  out.cost.variant = cfg.variant;
  out.cost.k = scheme.family().k;
  out.cost.n = scheme.family().size();
  std::exception_ptr failure;
  for (auto& f : pending) {
    try {
      Exchange ex = f.get();
      answers.push_back(std::move(*ex.answer));
      out.cost.per_server.push_back(ex.cost);
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const ProtocolError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProtocolError(std::string("retrieval aborted: ") + e.what());
    }
  }
  out.symbol = scheme.reconstruct(state, answers);
  return out;
}

}  // namespace mvpir::net
