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

#ifndef LZEBC_HUFFMAN_HPP_
#define LZEBC_HUFFMAN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "lzebc/bytes.hpp"
#include "lzebc/codebook.hpp"

namespace lzebc {

/// Bits packed MSB-first within each byte; trailing pad bits are zero.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_len = 0;
};

class BitWriter {
 public:
  /// Appends the low `len` bits of `code`, most significant first.
  void put(std::uint64_t code, unsigned len);
  BitStream finish() &&;

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;
  unsigned pending_ = 0;  // bits held in acc_, always < 8 between calls
  std::uint64_t bit_len_ = 0;
};

/// Throws ErrorKind::Data if a symbol has no codeword.
BitStream encode(std::span<const std::uint32_t> symbols, const Codebook& book);

/// Decodes exactly n symbols. Throws ErrorKind::Corruption when the bits run
/// out early, when bits remain afterwards, or when padding is malformed.
std::vector<std::uint32_t> decode(const BitStream& stream, const Codebook& book,
                                  std::uint64_t n);

/// Section layout: u64 bit_len, u64 symbol count, packed bytes.
void write_bitstream(io::ByteWriter& out, const BitStream& stream,
                     std::uint64_t symbols);
BitStream read_bitstream(io::ByteReader& in, std::uint64_t& symbols);

}  // namespace lzebc

#endif  // LZEBC_HUFFMAN_HPP_
