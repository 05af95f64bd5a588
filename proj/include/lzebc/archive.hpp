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

#ifndef LZEBC_ARCHIVE_HPP_
#define LZEBC_ARCHIVE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lzebc/bytes.hpp"
#include "lzebc/codebook.hpp"
#include "lzebc/compressibility.hpp"
#include "lzebc/grid.hpp"
#include "lzebc/quantizer.hpp"

// Archive segment layout, little-endian, fields packed without padding:
//
//   magic "LZEBC\0\0\1"       8 bytes
//   version                   u16 (= 1)
//   dtype                     u8  (0 = f32, 1 = f64)
//   ndim                      u8
//   dims x, y, z              u32 x 3
//   chunk edges x, y, z       u32 x 3
//   eb mode                   u8  (0 = abs, 1 = rel)
//   eb value                  f64
//   vmin, vmax                f64 x 2
//   cap                       u32
//   workflow                  u8  (0 = huffman, 1 = rle, 2 = rlevle)
//   element count             u64
//   outlier count             u64
//   codebook section          u64 offset, u64 length
//   symbol stream section     u64 offset, u64 length
//   outlier section           u64 offset, u64 length
//
// Sections follow in that order, each starting 8-byte aligned, zero-padded.
// Offsets are relative to the segment start. A file holds one or more
// segments back to back, each padded to a multiple of 8 bytes; segments
// stack along the outermost axis.
namespace lzebc {

inline constexpr std::array<std::uint8_t, 8> kMagic = {'L', 'Z', 'E', 'B',
                                                       'C', 0,   0,   1};
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 130;
inline constexpr std::uint32_t kMaxCap = std::uint32_t{1} << 24;

struct Section {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
};

struct ArchiveHeader {
  Dtype dtype = Dtype::F32;
  Dims dims;
  ChunkSpec chunk;
  ErrorBound eb;
  double vmin = 0;
  double vmax = 0;
  std::uint32_t cap = 1024;
  Workflow workflow = Workflow::Huffman;
  std::uint64_t count = 0;
  std::uint64_t outlier_count = 0;
  Section codebook;
  Section symbols;
  Section outliers;
};

void write_header(io::ByteWriter& out, const ArchiveHeader& h);

/// Reads and validates the fixed header fields. Section bounds are checked
/// by parse_segment.
ArchiveHeader read_header(io::ByteReader& in);

/// Appends a full segment; fills the header's counts and sections.
void write_segment(io::ByteWriter& out, ArchiveHeader header,
                   std::span<const std::uint8_t> codebook,
                   std::span<const std::uint8_t> symbols,
                   const OutlierList& outliers);

struct SegmentView {
  ArchiveHeader header;
  std::span<const std::uint8_t> codebook;
  std::span<const std::uint8_t> symbols;
  std::span<const std::uint8_t> outliers;
  std::size_t end = 0;  // padded segment size
};

/// Throws ErrorKind::Corruption on any inconsistency.
SegmentView parse_segment(std::span<const std::uint8_t> bytes);
std::vector<SegmentView> parse_archive(std::span<const std::uint8_t> bytes);

struct EncodedSymbols {
  std::vector<std::uint8_t> codebook;  // cap code lengths, or empty
  std::vector<std::uint8_t> section;
};

/// Encodes the chunk-major quant-code stream for a workflow.
///   huffman: bitstream section (u64 bit_len, u64 count, bytes)
///   rle:     u64 runs, u64 total, values (u16 if cap <= 65536 else u32),
///            u32 lengths
///   rlevle:  u64 runs, u64 total, bitstream of values, u32 lengths
/// The codebook covers quant-codes (huffman) or run values (rlevle).
EncodedSymbols encode_symbols(std::span<const std::uint32_t> stream,
                              Workflow workflow, std::uint32_t cap,
                              const Histogram* stream_hist = nullptr);

std::vector<std::uint32_t> decode_symbols(const SegmentView& seg);

std::vector<std::uint8_t> encode_outliers(const OutlierList& outliers);
OutlierList decode_outliers(const SegmentView& seg);

}  // namespace lzebc

#endif  // LZEBC_ARCHIVE_HPP_
