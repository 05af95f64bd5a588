// Copyright 2026 The lzebc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LZEBC_BYTES_HPP_
#define LZEBC_BYTES_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "lzebc/error.hpp"

// Little-endian byte buffers used by the archive format.
namespace lzebc::io {

static_assert(std::endian::native == std::endian::little,
              "lzebc serializes by memcpy and assumes a little-endian host");

class ByteWriter {
 public:
  template <class T>
    requires std::is_arithmetic_v<T>
  void put(T value) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    buf_.insert(buf_.end(), p, p + sizeof(T));
  }

  template <class T>
    requires std::is_arithmetic_v<T>
  void put_array(std::span<const T> values) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(values.data());
    buf_.insert(buf_.end(), p, p + values.size_bytes());
  }

  void put_bytes(std::span<const std::uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }

  // Zero-pads to the next multiple of `alignment`.
  void align(std::size_t alignment) {
    while (buf_.size() % alignment != 0) buf_.push_back(0);
  }

  std::size_t size() const { return buf_.size(); }
  std::vector<std::uint8_t>& buffer() { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <class T>
    requires std::is_arithmetic_v<T>
  T get() {
    T value;
    std::memcpy(&value, take(sizeof(T)).data(), sizeof(T));
    return value;
  }

  template <class T>
    requires std::is_arithmetic_v<T>
  std::vector<T> get_array(std::uint64_t n) {
    if (n > remaining() / sizeof(T)) truncated();
    std::vector<T> out(static_cast<std::size_t>(n));
    std::memcpy(out.data(), take(n * sizeof(T)).data(), n * sizeof(T));
    return out;
  }

  std::span<const std::uint8_t> take(std::uint64_t n) {
    if (n > remaining()) truncated();
    auto out = bytes_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  [[noreturn]] void truncated() const {
    throw Error(ErrorKind::Corruption,
                "archive truncated at byte " + std::to_string(pos_));
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace lzebc::io

#endif  // LZEBC_BYTES_HPP_
