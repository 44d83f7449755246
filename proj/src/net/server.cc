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

#include "mvpir/net/server.h"

#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>

#include "mvpir/errors.h"
#include "socket_io.h"

namespace mvpir::net {

PirServer::PirServer(std::shared_ptr<const ServingContext> ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ParameterError("server needs a serving context");
}

PirServer::~PirServer() { stop(); }

std::uint16_t PirServer::start(const std::string& host, std::uint16_t port) {
  if (running_.exchange(true)) throw ParameterError("server already started");
  detail::Socket sock = detail::listen_on(host, port);
  port_ = detail::local_port(sock);
  listen_fd_ = sock.release();
  acceptor_ = std::thread([this] { accept_loop(); });
  return port_;
}

void PirServer::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

void PirServer::stop() {
  if (!running_.exchange(false)) {
    wait();
    return;
  }
  ::shutdown(listen_fd_, SHUT_RDWR);
  wait();
  ::close(listen_fd_);
  listen_fd_ = -1;
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (std::thread& t : workers) t.join();
}

void PirServer::accept_loop() {
  while (running_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (!running_) {
      ::close(fd);
      break;
    }
    open_fds_.insert(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void PirServer::serve_connection(int fd) {
  detail::Socket sock(fd);
  ServerSession session(ctx_);
  bool alive = detail::send_all(sock, encode_frame(session.hello_frame()));
  std::uint8_t chunk[4096];
  while (alive) {
    ssize_t n = ::recv(sock.fd(), chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    ServerSession::Step step = session.feed(std::span(chunk, static_cast<std::size_t>(n)));
    for (const Frame& reply : step.replies) {
      if (!detail::send_all(sock, encode_frame(reply))) {
        alive = false;
        break;
      }
    }
    if (step.close) break;
  }
  std::lock_guard<std::mutex> lock(mu_);
  open_fds_.erase(fd);
}

}  // namespace mvpir::net
