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

// Blocking POSIX stream-socket helpers shared by the server and client.

#ifndef MVPIR_SRC_NET_SOCKET_IO_H_
#define MVPIR_SRC_NET_SOCKET_IO_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "mvpir/net/wire.h"

namespace mvpir::net::detail {

// Owns a file descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  ~Socket() { reset(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();
  void reset();

 private:
  int fd_ = -1;
};

// Throws ProtocolError when the host cannot be resolved or reached.
Socket connect_to(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout);
// Binds and listens; port 0 picks an ephemeral port.
Socket listen_on(const std::string& host, std::uint16_t port);
std::uint16_t local_port(const Socket& sock);

void set_timeouts(const Socket& sock, std::chrono::milliseconds timeout);

// False when the peer is gone.
bool send_all(const Socket& sock, std::span<const std::uint8_t> bytes);

// Reads one complete frame. Throws ProtocolError on EOF, timeout or a frame
// that does not decode. `wire_bytes` receives the framed size.
Frame read_frame(const Socket& sock, std::size_t* wire_bytes = nullptr);

}  // namespace mvpir::net::detail

#endif  // MVPIR_SRC_NET_SOCKET_IO_H_
