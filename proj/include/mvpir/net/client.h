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

#ifndef MVPIR_NET_CLIENT_H_
#define MVPIR_NET_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvpir/scheme.h"

namespace mvpir::net {

struct ServerAddress {
  std::string host;
  std::uint16_t port = 0;
};

// "host:port" or "[v6]:port". Throws ParameterError.
ServerAddress parse_address(std::string_view text);
std::string to_string(const ServerAddress& address);

struct ServerCost {
  // Frame bodies only.
  std::size_t bytes_up = 0;
  std::size_t bytes_down = 0;
  // Everything on the wire, headers and HELLO included.
  std::size_t framed_up = 0;
  std::size_t framed_down = 0;
};

struct CostReport {
  Variant variant = Variant::kMv2Server;
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<ServerCost> per_server;

  std::size_t total() const;
  std::size_t framed_total() const;
};

struct Retrieval {
  std::uint32_t symbol = 0;
  CostReport cost;
};

class PirClient {
 public:
  explicit PirClient(std::shared_ptr<const Scheme> scheme,
                     std::chrono::milliseconds timeout = std::chrono::seconds(10));

  // Queries every server concurrently and reconstructs a_tau. Any unreachable
  // server, HELLO mismatch or ERROR reply aborts with ProtocolError.
  Retrieval retrieve(std::span<const ServerAddress> servers, std::size_t tau,
                     std::mt19937_64& rng) const;

  const Scheme& scheme() const { return *scheme_; }

 private:
  std::shared_ptr<const Scheme> scheme_;
  std::chrono::milliseconds timeout_;
};

}  // namespace mvpir::net

#endif  // MVPIR_NET_CLIENT_H_
