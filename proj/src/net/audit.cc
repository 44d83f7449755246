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

#include "mvpir/net/audit.h"

#include <algorithm>
#include <map>
#include <string>

#include "mvpir/errors.h"

namespace mvpir::net {

std::uint64_t AuditReport::max_tv_numerator() const {
  std::uint64_t worst = 0;
  for (std::uint64_t v : server_tv_numerator) worst = std::max(worst, v);
  return worst;
}

double AuditReport::max_tv() const {
  if (space == 0) return 0.0;
  return static_cast<double>(max_tv_numerator()) / (2.0 * static_cast<double>(space));
}

namespace {

using Histogram = std::map<ZmVector, std::uint64_t>;

std::uint64_t l1_distance(const Histogram& a, const Histogram& b) {
  std::uint64_t sum = 0;
  for (const auto& [q, ca] : a) {
    auto it = b.find(q);
    std::uint64_t cb = it == b.end() ? 0 : it->second;
    sum += ca > cb ? ca - cb : cb - ca;
  }
  for (const auto& [q, cb] : b) {
    if (!a.contains(q)) sum += cb;
  }
  return sum;
}

}  // namespace

AuditReport audit_query_distribution(std::uint32_t alphabet, std::size_t k, std::size_t servers,
                                     std::span<const std::size_t> taus, const QueryFn& query,
                                     std::uint64_t max_space) {
  if (alphabet < 2) throw ParameterError("alphabet must have at least 2 symbols");
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (space > max_space / alphabet) {
      throw ParameterError("audit space " + std::to_string(alphabet) + "^" + std::to_string(k) +
                           " exceeds the limit of " + std::to_string(max_space) +
                           " coin values; audit with a smaller k");
    }
    space *= alphabet;
  }

  AuditReport report;
  report.servers = servers;
  report.taus = taus.size();
  report.space = space;
  report.server_tv_numerator.assign(servers, 0);

  // hist[tau_index][server]
  std::vector<std::vector<Histogram>> hist(taus.size(), std::vector<Histogram>(servers));
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    ZmVector z(k, 0);
    for (std::uint64_t step = 0; step < space; ++step) {
      std::vector<ZmVector> qs = query(taus[ti], z);
      if (qs.size() != servers) throw InternalError("query function returned the wrong count");
      for (std::size_t s = 0; s < servers; ++s) ++hist[ti][s][qs[s]];
      for (std::size_t i = 0; i < k; ++i) {
        if (++z[i] < alphabet) break;
        z[i] = 0;
      }
    }
  }
  for (std::size_t s = 0; s < servers; ++s) {
    for (std::size_t a = 0; a < taus.size(); ++a) {
      for (std::size_t b = a + 1; b < taus.size(); ++b) {
        report.server_tv_numerator[s] =
            std::max(report.server_tv_numerator[s], l1_distance(hist[a][s], hist[b][s]));
      }
    }
  }
  return report;
}

AuditReport privacy_audit(const Scheme& scheme, std::span<const std::size_t> taus,
                          std::uint64_t max_space) {
  for (std::size_t tau : taus) {
    if (tau >= scheme.family().size()) throw ParameterError("tau outside the family");
  }
  return audit_query_distribution(
      scheme.config().m, scheme.family().k, scheme.config().servers, taus,
      [&scheme](std::size_t tau, const ZmVector& z) { return scheme.query_with(tau, z).queries; },
      max_space);
}

AuditReport privacy_audit(const BaselineScheme& scheme, std::span<const std::size_t> taus,
                          std::uint64_t max_space) {
  for (std::size_t tau : taus) {
    if (tau >= scheme.length()) throw ParameterError("tau outside the database");
  }
  return audit_query_distribution(
      scheme.field(), scheme.dimension(), 2, taus,
      [&scheme](std::size_t tau, const ZmVector& z) { return scheme.queries(tau, z); },
      max_space);
}

}  // namespace mvpir::net
