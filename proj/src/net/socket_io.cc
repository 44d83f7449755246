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

#include "socket_io.h"

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>
#include <algorithm>
#include <vector>

#include "mvpir/errors.h"

namespace mvpir::net::detail {

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    reset();
    fd_ = other.release();
  }
  return *this;
}

int Socket::release() {
  int fd = fd_;
  fd_ = -1;
  return fd;
}

void Socket::reset() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

namespace {

struct AddrInfoDeleter {
  void operator()(addrinfo* p) const { freeaddrinfo(p); }
};

std::unique_ptr<addrinfo, AddrInfoDeleter> resolve(const std::string& host, std::uint16_t port,
                                                   bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) {
    throw ProtocolError("cannot resolve " + host + ": " + gai_strerror(rc));
  }
  return std::unique_ptr<addrinfo, AddrInfoDeleter>(res);
}

}  // namespace

void set_timeouts(const Socket& sock, std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  setsockopt(sock.fd(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  setsockopt(sock.fd(), SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

Socket connect_to(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
  auto res = resolve(host, port, false);
  std::string last_error = "no address";
  for (addrinfo* ai = res.get(); ai != nullptr; ai = ai->ai_next) {
    Socket sock(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!sock.valid()) continue;
    set_timeouts(sock, timeout);
    if (::connect(sock.fd(), ai->ai_addr, ai->ai_addrlen) == 0) return sock;
    last_error = std::strerror(errno);
  }
  throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port) + ": " +
                      last_error);
}

Socket listen_on(const std::string& host, std::uint16_t port) {
  auto res = resolve(host, port, true);
  std::string last_error = "no address";
  for (addrinfo* ai = res.get(); ai != nullptr; ai = ai->ai_next) {
    Socket sock(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!sock.valid()) continue;
    int one = 1;
    setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(sock.fd(), ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(sock.fd(), 64) == 0) {
      return sock;
    }
    last_error = std::strerror(errno);
  }
  throw ProtocolError("cannot listen on " + host + ":" + std::to_string(port) + ": " +
                      last_error);
}

std::uint16_t local_port(const Socket& sock) {
  sockaddr_storage addr{};
  socklen_t len = sizeof(addr);
  if (getsockname(sock.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) return 0;
  if (addr.ss_family == AF_INET) {
    return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
  }
  if (addr.ss_family == AF_INET6) {
    return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
  }
  return 0;
}

bool send_all(const Socket& sock, std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    ssize_t n = ::send(sock.fd(), bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

Frame read_frame(const Socket& sock, std::size_t* wire_bytes) {
  std::vector<std::uint8_t> buffer;
  std::uint8_t chunk[4096];
  for (;;) {
    DecodeResult r = decode_frame(buffer);
    switch (r.status) {
      case DecodeStatus::kOk:
        if (wire_bytes != nullptr) *wire_bytes = r.consumed;
        return std::move(r.frame);
      case DecodeStatus::kNeedMore:
        break;
      case DecodeStatus::kBadMagic:
        throw ProtocolError("peer sent a frame with bad magic");
      case DecodeStatus::kBadVersion:
        throw ProtocolError("peer speaks an unsupported wire version");
      case DecodeStatus::kUnknownType:
        throw ProtocolError("peer sent an unknown message type");
      case DecodeStatus::kOversized:
        throw ProtocolError("peer sent an oversized frame");
    }
    // Never read past the current frame so the next one stays on the socket.
    std::size_t want = sizeof(chunk);
    if (buffer.size() < kHeaderSize) {
      want = kHeaderSize - buffer.size();
    } else {
      want = std::min(want, kHeaderSize + read_le32(std::span(buffer).subspan(7, 4)) -
                                buffer.size());
    }
    ssize_t n = ::recv(sock.fd(), chunk, want, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n == 0) throw ProtocolError("connection closed by peer");
    if (n < 0) throw ProtocolError(std::string("receive failed: ") + std::strerror(errno));
    buffer.insert(buffer.end(), chunk, chunk + n);
  }
}

}  // namespace mvpir::net::detail
