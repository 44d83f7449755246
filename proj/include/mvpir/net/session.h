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

#ifndef MVPIR_NET_SESSION_H_
#define MVPIR_NET_SESSION_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mvpir/encoder.h"
#include "mvpir/net/wire.h"
#include "mvpir/scheme.h"

namespace mvpir::net {

// Everything a server needs, shared read-only by all connections.
struct ServingContext {
  ServingContext(Scheme scheme_in, EncodedDatabase db_in);

  Scheme scheme;
  EncodedDatabase db;
  std::array<std::uint8_t, 32> digest;

  Hello hello() const;
};

// Transport-free server side of one connection: bytes in, frames out.
// Holds only the partial-frame buffer; no state survives across queries.
class ServerSession {
 public:
  explicit ServerSession(std::shared_ptr<const ServingContext> ctx);

  Frame hello_frame() const;

  struct Step {
    std::vector<Frame> replies;
    bool close = false;
  };
  Step feed(std::span<const std::uint8_t> bytes);

  // Reply to one decoded frame (never closes).
  Frame handle(const Frame& frame) const;

 private:
  std::shared_ptr<const ServingContext> ctx_;
  std::vector<std::uint8_t> buffer_;
};

}  // namespace mvpir::net

#endif  // MVPIR_NET_SESSION_H_
