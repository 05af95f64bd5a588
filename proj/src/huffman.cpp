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

#include "lzebc/huffman.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <string>

namespace lzebc {

void BitWriter::put(std::uint64_t code, unsigned len) {
  if (len > 32) {
    put(code >> 32, len - 32);
    put(code, 32);
    return;
  }
  if (len == 0) return;
  acc_ = (acc_ << len) | (code & ((std::uint64_t{1} << len) - 1));
  pending_ += len;
  bit_len_ += len;
  while (pending_ >= 8) {
    pending_ -= 8;
    bytes_.push_back(static_cast<std::uint8_t>(acc_ >> pending_));
  }
  acc_ &= (std::uint64_t{1} << pending_) - 1;
}

BitStream BitWriter::finish() && {
  if (pending_ > 0)
    bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
  pending_ = 0;
  return {std::move(bytes_), bit_len_};
}

BitStream encode(std::span<const std::uint32_t> symbols, const Codebook& book) {
  BitWriter w;
  for (auto s : symbols) {
    if (s >= book.size() || book.lengths[s] == 0)
      throw Error(ErrorKind::Data, "symbol " + std::to_string(s) + " has no codeword");
    w.put(book.codes[s], book.lengths[s]);
  }
  return std::move(w).finish();
}

namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorKind::Corruption, "Huffman stream: " + what);
}

// Canonical decode tables: per code length, the first codeword and the
// index of its symbol in (length, symbol) order. Short codes also go
// through a direct lookup table.
class CanonicalDecoder {
 public:
  static constexpr unsigned kLutBits = 11;

  explicit CanonicalDecoder(const Codebook& book) : max_len_(book.max_length()) {
    for (std::uint32_t s = 0; s < book.size(); ++s)
      if (book.lengths[s] > 0) sorted_.push_back(s);
    std::stable_sort(sorted_.begin(), sorted_.end(), [&](auto a, auto b) {
      return book.lengths[a] < book.lengths[b];
    });

    for (std::size_t i = 0; i < sorted_.size(); ++i) {
      const auto s = sorted_[i];
      const unsigned len = book.lengths[s];
      if (count_[len] == 0) {
        first_[len] = book.codes[s];
        base_[len] = i;
      } else if (book.codes[s] != first_[len] + count_[len]) {
        corrupt("codebook is not canonical");
      }
      ++count_[len];
    }

    lut_bits_ = std::min(kLutBits, max_len_);
    lut_sym_.assign(std::size_t{1} << lut_bits_, 0);
    lut_len_.assign(std::size_t{1} << lut_bits_, 0);
    for (auto s : sorted_) {
      const unsigned len = book.lengths[s];
      if (len > lut_bits_) break;
      const std::uint64_t start = book.codes[s] << (lut_bits_ - len);
      const std::uint64_t span = std::uint64_t{1} << (lut_bits_ - len);
      for (std::uint64_t k = start; k < start + span; ++k) {
        if (lut_len_[k] != 0) corrupt("codebook is not prefix-free");
        lut_sym_[k] = s;
        lut_len_[k] = static_cast<std::uint8_t>(len);
      }
    }
  }

  std::vector<std::uint32_t> run(const BitStream& stream, std::uint64_t n) const {
    const auto& bytes = stream.bytes;
    const std::uint64_t bit_len = stream.bit_len;
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, bit_len)));

    std::uint64_t pos = 0;
    auto bit = [&](std::uint64_t p) {
      return (bytes[p >> 3] >> (7 - (p & 7))) & 1u;
    };
    for (std::uint64_t i = 0; i < n; ++i) {
      if (lut_bits_ > 0) {
        const auto k = peek(bytes, pos) >> (64 - lut_bits_);
        const unsigned len = lut_len_[k];
        if (len != 0) {
          if (pos + len > bit_len) corrupt("bits exhausted before symbol count");
          out.push_back(lut_sym_[k]);
          pos += len;
          continue;
        }
      }
      std::uint64_t code = 0;
      unsigned len = 0;
      for (;;) {
        if (pos >= bit_len) corrupt("bits exhausted before symbol count");
        if (++len > max_len_) corrupt("invalid codeword");
        code = (code << 1) | bit(pos++);
        if (count_[len] != 0 && code >= first_[len] &&
            code - first_[len] < count_[len]) {
          out.push_back(sorted_[base_[len] + (code - first_[len])]);
          break;
        }
      }
    }
    if (pos != bit_len) corrupt("dangling bits after last symbol");
    return out;
  }

 private:
  // 64 bits starting at bit position pos, zero-filled past the end.
  static std::uint64_t peek(const std::vector<std::uint8_t>& bytes,
                            std::uint64_t pos) {
    const std::size_t byte = static_cast<std::size_t>(pos >> 3);
    const unsigned shift = pos & 7;
    std::uint64_t w = 0;
    if (byte + 8 <= bytes.size()) {
      std::memcpy(&w, bytes.data() + byte, 8);
      w = __builtin_bswap64(w);
    } else {
      for (std::size_t k = 0; k < 8 && byte + k < bytes.size(); ++k)
        w |= std::uint64_t{bytes[byte + k]} << (56 - 8 * k);
    }
    if (shift == 0) return w;
    w <<= shift;
    if (byte + 8 < bytes.size()) w |= bytes[byte + 8] >> (8 - shift);
    return w;
  }

  unsigned max_len_;
  unsigned lut_bits_ = 0;
  std::vector<std::uint32_t> sorted_;
  std::array<std::uint64_t, kMaxCodeLength + 1> first_{};
  std::array<std::uint64_t, kMaxCodeLength + 1> count_{};
  std::array<std::size_t, kMaxCodeLength + 1> base_{};
  std::vector<std::uint32_t> lut_sym_;
  std::vector<std::uint8_t> lut_len_;
};

}  // namespace

std::vector<std::uint32_t> decode(const BitStream& stream, const Codebook& book,
                                  std::uint64_t n) {
  if (stream.bytes.size() != (stream.bit_len + 7) / 8)
    corrupt("byte length does not match bit length");
  if (stream.bit_len % 8 != 0) {
    const unsigned pad = 8 - stream.bit_len % 8;
    if ((stream.bytes.back() & ((1u << pad) - 1)) != 0) corrupt("nonzero padding");
  }
  if (n == 0) {
    if (stream.bit_len != 0) corrupt("dangling bits after last symbol");
    return {};
  }
  if (book.max_length() == 0) corrupt("empty codebook");
  return CanonicalDecoder(book).run(stream, n);
}

void write_bitstream(io::ByteWriter& out, const BitStream& stream,
                     std::uint64_t symbols) {
  out.put<std::uint64_t>(stream.bit_len);
  out.put<std::uint64_t>(symbols);
  out.put_bytes(stream.bytes);
}

BitStream read_bitstream(io::ByteReader& in, std::uint64_t& symbols) {
  BitStream s;
  s.bit_len = in.get<std::uint64_t>();
  symbols = in.get<std::uint64_t>();
  if (s.bit_len > std::uint64_t{8} * in.remaining())
    throw Error(ErrorKind::Corruption, "bitstream longer than its section");
  auto body = in.take((s.bit_len + 7) / 8);
  s.bytes.assign(body.begin(), body.end());
  return s;
}

}  // namespace lzebc
