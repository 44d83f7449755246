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

// Length-prefixed frames:
//
//   offset  size  field
//   0       4     magic "MVPR"
//   4       1     version (kWireVersion)
//   5       1     message type
//   6       1     scheme id
//   7       4     body length, little-endian
//   11      n     body
//
// QUERY body: k bytes, one Z_m coordinate each.
// ANSWER body: serialized AnswerBundle.
// ERROR body: 1 code byte followed by a UTF-8 message.
// HELLO body (server -> client on connect): version, scheme id, m,
//   k (2 bytes little-endian), 32-byte SHA-256 family digest.

#ifndef MVPIR_NET_WIRE_H_
#define MVPIR_NET_WIRE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mvpir::net {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'V', 'P', 'R'};
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kHeaderSize = 11;
inline constexpr std::size_t kMaxBodySize = std::size_t{1} << 24;

enum class MessageType : std::uint8_t {
  kQuery = 1,
  kAnswer = 2,
  kError = 3,
  kHello = 4,
};

enum class ErrorCode : std::uint8_t {
  kMalformed = 1,
  kBadLength = 2,
  kBadVersion = 3,
  kSchemeMismatch = 4,
  kUnexpectedType = 5,
  kBadCoordinate = 6,
  kInternal = 7,
};

struct Frame {
  std::uint8_t version = kWireVersion;
  MessageType type = MessageType::kQuery;
  std::uint8_t scheme_id = 0;
  std::vector<std::uint8_t> body;

  bool operator==(const Frame&) const = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);

enum class DecodeStatus {
  kOk,
  kNeedMore,     // buffer holds a prefix of a frame
  kBadMagic,
  kBadVersion,
  kUnknownType,
  kOversized,    // body length above kMaxBodySize
};

struct DecodeResult {
  DecodeStatus status = DecodeStatus::kNeedMore;
  Frame frame;
  std::size_t consumed = 0;
};

// Decodes the frame at the start of `buffer`. Never throws.
DecodeResult decode_frame(std::span<const std::uint8_t> buffer);

std::uint32_t read_le32(std::span<const std::uint8_t> bytes);

struct Hello {
  std::uint8_t version = kWireVersion;
  std::uint8_t scheme_id = 0;
  std::uint8_t m = 0;
  std::uint16_t k = 0;
  std::array<std::uint8_t, 32> family_digest{};

  bool operator==(const Hello&) const = default;
};

inline constexpr std::size_t kHelloBodySize = 37;

std::vector<std::uint8_t> encode_hello(const Hello& hello);
// Throws ParseError on a body of the wrong size.
Hello decode_hello(std::span<const std::uint8_t> body);

Frame error_frame(ErrorCode code, std::uint8_t scheme_id, const std::string& message);

struct ErrorBody {
  ErrorCode code = ErrorCode::kMalformed;
  std::string message;
};
// Throws ParseError on an empty body.
ErrorBody decode_error(std::span<const std::uint8_t> body);

std::string error_code_name(ErrorCode code);

}  // namespace mvpir::net

#endif  // MVPIR_NET_WIRE_H_
