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

#include "mvpir/net/wire.h"

#include <algorithm>

#include "mvpir/errors.h"

namespace mvpir::net {

namespace {

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

bool known_type(std::uint8_t t) {
  return t >= static_cast<std::uint8_t>(MessageType::kQuery) &&
         t <= static_cast<std::uint8_t>(MessageType::kHello);
}

}  // namespace

std::uint32_t read_le32(std::span<const std::uint8_t> bytes) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.body.size() > kMaxBodySize) throw ParameterError("frame body too large");
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(kHeaderSize + frame.body.size());
  out.push_back(frame.version);
  out.push_back(static_cast<std::uint8_t>(frame.type));
  out.push_back(frame.scheme_id);
  put_le32(out, static_cast<std::uint32_t>(frame.body.size()));
  out.insert(out.end(), frame.body.begin(), frame.body.end());
  return out;
}

DecodeResult decode_frame(std::span<const std::uint8_t> buffer) {
  DecodeResult result;
  const std::size_t magic_seen = std::min(buffer.size(), kMagic.size());
  if (!std::equal(buffer.begin(), buffer.begin() + magic_seen, kMagic.begin())) {
    result.status = DecodeStatus::kBadMagic;
    return result;
  }
  if (buffer.size() < kHeaderSize) return result;

  if (buffer[4] != kWireVersion) {
    result.status = DecodeStatus::kBadVersion;
    return result;
  }
  if (!known_type(buffer[5])) {
    result.status = DecodeStatus::kUnknownType;
    return result;
  }
  const std::uint32_t len = read_le32(buffer.subspan(7, 4));
  if (len > kMaxBodySize) {
    result.status = DecodeStatus::kOversized;
    return result;
  }
  if (buffer.size() < kHeaderSize + len) return result;

  result.status = DecodeStatus::kOk;
  result.frame.version = buffer[4];
  result.frame.type = static_cast<MessageType>(buffer[5]);
  result.frame.scheme_id = buffer[6];
  result.frame.body.assign(buffer.begin() + kHeaderSize, buffer.begin() + kHeaderSize + len);
  result.consumed = kHeaderSize + len;
  return result;
}

std::vector<std::uint8_t> encode_hello(const Hello& hello) {
  std::vector<std::uint8_t> out = {hello.version, hello.scheme_id, hello.m,
                                   static_cast<std::uint8_t>(hello.k & 0xff),
                                   static_cast<std::uint8_t>(hello.k >> 8)};
  out.insert(out.end(), hello.family_digest.begin(), hello.family_digest.end());
  return out;
}

Hello decode_hello(std::span<const std::uint8_t> body) {
  if (body.size() != kHelloBodySize) throw ParseError("HELLO body must be 37 bytes");
  Hello hello;
  hello.version = body[0];
  hello.scheme_id = body[1];
  hello.m = body[2];
  hello.k = static_cast<std::uint16_t>(body[3] | (body[4] << 8));
  std::copy(body.begin() + 5, body.end(), hello.family_digest.begin());
  return hello;
}

Frame error_frame(ErrorCode code, std::uint8_t scheme_id, const std::string& message) {
  Frame f;
  f.type = MessageType::kError;
  f.scheme_id = scheme_id;
  f.body.push_back(static_cast<std::uint8_t>(code));
  f.body.insert(f.body.end(), message.begin(), message.end());
  return f;
}

ErrorBody decode_error(std::span<const std::uint8_t> body) {
  if (body.empty()) throw ParseError("ERROR body is empty");
  return ErrorBody{static_cast<ErrorCode>(body[0]), std::string(body.begin() + 1, body.end())};
}

std::string error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed:
      return "malformed";
    case ErrorCode::kBadLength:
      return "bad-length";
    case ErrorCode::kBadVersion:
      return "bad-version";
    case ErrorCode::kSchemeMismatch:
      return "scheme-mismatch";
    case ErrorCode::kUnexpectedType:
      return "unexpected-type";
    case ErrorCode::kBadCoordinate:
      return "bad-coordinate";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown(" + std::to_string(static_cast<int>(code)) + ")";
}

}  // namespace mvpir::net
