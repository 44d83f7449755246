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

#ifndef MVPIR_ERRORS_H_
#define MVPIR_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvpir {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied inconsistent moduli, orders, dimensions or configuration.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A bounded search or embedding ran out of room.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t largest_found)
      : Error(what), largest_found_(largest_found) {}

  std::size_t largest_found() const { return largest_found_; }

 private:
  std::size_t largest_found_;
};

// Input text or bytes could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Parsed data fails a semantic check (e.g. matching-vector property).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Wire-level or peer failure during a retrieval.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// An identity that must hold by construction did not. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvpir

#endif  // MVPIR_ERRORS_H_
