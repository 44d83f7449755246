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

// Exact single-server privacy check: enumerate every client coin z, tally the
// query each server slot would see, and compare the tallies across indices.

#ifndef MVPIR_NET_AUDIT_H_
#define MVPIR_NET_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mvpir/baseline.h"
#include "mvpir/ring.h"
#include "mvpir/scheme.h"

namespace mvpir::net {

struct AuditReport {
  std::size_t servers = 0;
  std::size_t taus = 0;
  // Number of equally likely z values enumerated.
  std::uint64_t space = 0;
  // Total-variation distance as an exact fraction numerator / (2 * space),
  // maximised over tau pairs, per server slot.
  std::vector<std::uint64_t> server_tv_numerator;

  std::uint64_t max_tv_numerator() const;
  double max_tv() const;
  bool is_private() const { return max_tv_numerator() == 0; }
};

// Queries produced for every server slot from index tau and coin z.
using QueryFn = std::function<std::vector<ZmVector>(std::size_t tau, const ZmVector& z)>;

// Enumerates z over alphabet^k. Throws ParameterError when that space exceeds
// max_space.
AuditReport audit_query_distribution(std::uint32_t alphabet, std::size_t k, std::size_t servers,
                                     std::span<const std::size_t> taus, const QueryFn& query,
                                     std::uint64_t max_space = 1'000'000);

AuditReport privacy_audit(const Scheme& scheme, std::span<const std::size_t> taus,
                          std::uint64_t max_space = 1'000'000);
AuditReport privacy_audit(const BaselineScheme& scheme, std::span<const std::size_t> taus,
                          std::uint64_t max_space = 1'000'000);

}  // namespace mvpir::net

#endif  // MVPIR_NET_AUDIT_H_
