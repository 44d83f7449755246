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

#include "mvpir/net/session.h"

#include <exception>
#include <string>

#include "mvpir/errors.h"

namespace mvpir::net {

ServingContext::ServingContext(Scheme scheme_in, EncodedDatabase db_in)
    : scheme(std::move(scheme_in)), db(std::move(db_in)), digest(family_digest(scheme.family())) {
  if (db.modulus() != scheme.config().m || db.dimension() != scheme.family().k) {
    throw ParameterError("database was not encoded against the scheme's family");
  }
  if (scheme.family().k > 0xffff) throw ParameterError("dimension does not fit the HELLO frame");
}

Hello ServingContext::hello() const {
  Hello h;
  h.scheme_id = scheme_id(scheme.config().variant);
  h.m = static_cast<std::uint8_t>(scheme.config().m);
  h.k = static_cast<std::uint16_t>(scheme.family().k);
  h.family_digest = digest;
  return h;
}

ServerSession::ServerSession(std::shared_ptr<const ServingContext> ctx) : ctx_(std::move(ctx)) {}

Frame ServerSession::hello_frame() const {
  Frame f;
  f.type = MessageType::kHello;
  f.scheme_id = scheme_id(ctx_->scheme.config().variant);
  f.body = encode_hello(ctx_->hello());
  return f;
}

ServerSession::Step ServerSession::feed(std::span<const std::uint8_t> bytes) {
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
  const std::uint8_t sid = scheme_id(ctx_->scheme.config().variant);
  Step step;
  while (!buffer_.empty()) {
    DecodeResult r = decode_frame(buffer_);
    switch (r.status) {
      case DecodeStatus::kNeedMore:
        return step;
      case DecodeStatus::kOk:
        step.replies.push_back(handle(r.frame));
        buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(r.consumed));
        break;
      case DecodeStatus::kBadMagic:
        step.replies.push_back(error_frame(ErrorCode::kMalformed, sid, "bad magic"));
        step.close = true;
        return step;
      case DecodeStatus::kBadVersion:
        step.replies.push_back(error_frame(ErrorCode::kBadVersion, sid, "unsupported version"));
        step.close = true;
        return step;
      case DecodeStatus::kUnknownType:
        step.replies.push_back(error_frame(ErrorCode::kUnexpectedType, sid, "unknown type"));
        step.close = true;
        return step;
      case DecodeStatus::kOversized:
        step.close = true;
        return step;
    }
  }
  return step;
}

Frame ServerSession::handle(const Frame& frame) const {
  const Scheme& scheme = ctx_->scheme;
  const std::uint8_t sid = scheme_id(scheme.config().variant);
  if (frame.type != MessageType::kQuery) {
    return error_frame(ErrorCode::kUnexpectedType, sid, "servers only accept QUERY");
  }
  if (frame.scheme_id != sid) {
    return error_frame(ErrorCode::kSchemeMismatch, sid,
                       "server runs " + std::string(variant_name(scheme.config().variant)));
  }
  const std::size_t k = scheme.family().k;
  if (frame.body.size() != k) {
    return error_frame(ErrorCode::kBadLength, sid,
                       "query must be " + std::to_string(k) + " bytes, got " +
                           std::to_string(frame.body.size()));
  }
  ZmVector q(frame.body.begin(), frame.body.end());
  for (std::uint32_t c : q) {
    if (c >= scheme.config().m) {
      return error_frame(ErrorCode::kBadCoordinate, sid, "query coordinate not reduced mod m");
    }
  }
  try {
    Frame reply;
    reply.type = MessageType::kAnswer;
    reply.scheme_id = sid;
    reply.body = scheme.answer(ctx_->db, q).serialize();
    return reply;
  } catch (const std::exception& e) {
    return error_frame(ErrorCode::kInternal, sid, e.what());
  }
}

}  // namespace mvpir::net
