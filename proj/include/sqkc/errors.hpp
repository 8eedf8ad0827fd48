// Copyright 2026 The SQKC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace sqkc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: index out of range, dimension mismatch, empty inputs.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A register would exceed the desk-scale qubit cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Malformed or unreadable dataset/configuration input.
class DataError : public Error {
  public:
    using Error::Error;
};

namespace detail {
[[noreturn]] inline void fail(const std::string &msg) { throw InvalidArgument(msg); }

inline void require(bool cond, const char *msg) {
    if (!cond) {
        throw InvalidArgument(msg);
    }
}
} // namespace detail

} // namespace sqkc
