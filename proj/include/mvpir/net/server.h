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

#ifndef MVPIR_NET_SERVER_H_
#define MVPIR_NET_SERVER_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "mvpir/net/session.h"

namespace mvpir::net {

// TCP server answering QUERY frames from a shared immutable context, one
// thread per connection. Sends HELLO as soon as a client connects.
class PirServer {
 public:
  explicit PirServer(std::shared_ptr<const ServingContext> ctx);
  PirServer(const PirServer&) = delete;
  PirServer& operator=(const PirServer&) = delete;
  ~PirServer();

  // Binds and starts accepting in the background. Port 0 picks a free port;
  // returns the bound port.
  std::uint16_t start(const std::string& host, std::uint16_t port);
  // Blocks until stop() is called from another thread.
  void wait();
  void stop();

  std::uint16_t port() const { return port_; }
  const ServingContext& context() const { return *ctx_; }

 private:
  void accept_loop();
  void serve_connection(int fd);

  std::shared_ptr<const ServingContext> ctx_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::set<int> open_fds_;
  std::vector<std::thread> workers_;
};

}  // namespace mvpir::net

#endif  // MVPIR_NET_SERVER_H_
