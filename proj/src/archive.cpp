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

#include "lzebc/archive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "lzebc/huffman.hpp"
#include "lzebc/rle.hpp"

namespace lzebc {

namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorKind::Corruption, "invalid archive: " + what);
}

std::uint32_t to_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::Usage, std::string(what) + " exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

void put_section(io::ByteWriter& out, const Section& s) {
  out.put<std::uint64_t>(s.offset);
  out.put<std::uint64_t>(s.length);
}

Section get_section(io::ByteReader& in) {
  Section s;
  s.offset = in.get<std::uint64_t>();
  s.length = in.get<std::uint64_t>();
  return s;
}

}  // namespace

void write_header(io::ByteWriter& out, const ArchiveHeader& h) {
  out.put_bytes(kMagic);
  out.put<std::uint16_t>(kFormatVersion);
  out.put<std::uint8_t>(static_cast<std::uint8_t>(h.dtype));
  out.put<std::uint8_t>(static_cast<std::uint8_t>(h.dims.ndim));
  out.put<std::uint32_t>(to_u32(h.dims.nx, "dimension"));
  out.put<std::uint32_t>(to_u32(h.dims.ny, "dimension"));
  out.put<std::uint32_t>(to_u32(h.dims.nz, "dimension"));
  out.put<std::uint32_t>(to_u32(h.chunk.cx, "chunk edge"));
  out.put<std::uint32_t>(to_u32(h.chunk.cy, "chunk edge"));
  out.put<std::uint32_t>(to_u32(h.chunk.cz, "chunk edge"));
  out.put<std::uint8_t>(static_cast<std::uint8_t>(h.eb.mode));
  out.put<double>(h.eb.value);
  out.put<double>(h.vmin);
  out.put<double>(h.vmax);
  out.put<std::uint32_t>(h.cap);
  out.put<std::uint8_t>(static_cast<std::uint8_t>(h.workflow));
  out.put<std::uint64_t>(h.count);
  out.put<std::uint64_t>(h.outlier_count);
  put_section(out, h.codebook);
  put_section(out, h.symbols);
  put_section(out, h.outliers);
}

ArchiveHeader read_header(io::ByteReader& in) {
  auto magic = in.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) corrupt("bad magic");
  if (in.get<std::uint16_t>() != kFormatVersion) corrupt("unsupported version");

  ArchiveHeader h;
  const auto dtype = in.get<std::uint8_t>();
  if (dtype > 1) corrupt("unknown dtype");
  h.dtype = static_cast<Dtype>(dtype);

  const int ndim = in.get<std::uint8_t>();
  std::array<std::size_t, 3> ext{};
  for (auto& e : ext) e = in.get<std::uint32_t>();
  if (ndim < 1 || ndim > 3) corrupt("ndim out of range");
  if (ext[0] == 0 || ext[1] == 0 || ext[2] == 0) corrupt("zero extent");
  if ((ndim < 2 && ext[1] != 1) || (ndim < 3 && ext[2] != 1))
    corrupt("extents inconsistent with ndim");
  try {
    h.dims = Dims::from_extents(std::span(ext.data(), static_cast<std::size_t>(ndim)));
  } catch (const Error&) {
    corrupt("element count overflows");
  }

  h.chunk.cx = in.get<std::uint32_t>();
  h.chunk.cy = in.get<std::uint32_t>();
  h.chunk.cz = in.get<std::uint32_t>();
  if (h.chunk.cx == 0 || h.chunk.cy == 0 || h.chunk.cz == 0) corrupt("zero chunk edge");

  const auto eb_mode = in.get<std::uint8_t>();
  if (eb_mode > 1) corrupt("unknown error-bound mode");
  h.eb.mode = static_cast<EbMode>(eb_mode);
  h.eb.value = in.get<double>();
  h.vmin = in.get<double>();
  h.vmax = in.get<double>();
  if (!(h.eb.value > 0) || !std::isfinite(h.eb.value)) corrupt("bad error bound");
  if (!std::isfinite(h.vmin) || !std::isfinite(h.vmax) || h.vmin > h.vmax)
    corrupt("bad value range");
  if (h.eb.mode == EbMode::Rel && !(h.vmax > h.vmin))
    corrupt("relative bound on a degenerate range");

  h.cap = in.get<std::uint32_t>();
  if (h.cap < 4 || h.cap > kMaxCap || !std::has_single_bit(h.cap)) corrupt("bad cap");
  const auto wf = in.get<std::uint8_t>();
  if (wf > 2) corrupt("unknown workflow");
  h.workflow = static_cast<Workflow>(wf);

  h.count = in.get<std::uint64_t>();
  h.outlier_count = in.get<std::uint64_t>();
  if (h.count != h.dims.count()) corrupt("element count does not match dims");
  if (h.outlier_count > h.count) corrupt("more outliers than elements");
  h.codebook = get_section(in);
  h.symbols = get_section(in);
  h.outliers = get_section(in);
  return h;
}

void write_segment(io::ByteWriter& out, ArchiveHeader header,
                   std::span<const std::uint8_t> codebook,
                   std::span<const std::uint8_t> symbols,
                   const OutlierList& outliers) {
  const auto outlier_bytes = encode_outliers(outliers);
  auto aligned = [](std::uint64_t v) { return (v + 7) / 8 * 8; };
  header.count = header.dims.count();
  header.outlier_count = outliers.size();
  header.codebook = {aligned(kHeaderBytes), codebook.size()};
  header.symbols = {aligned(header.codebook.offset + codebook.size()), symbols.size()};
  header.outliers = {aligned(header.symbols.offset + symbols.size()),
                     outlier_bytes.size()};

  write_header(out, header);
  out.align(8);
  out.put_bytes(codebook);
  out.align(8);
  out.put_bytes(symbols);
  out.align(8);
  out.put_bytes(outlier_bytes);
  out.align(8);
}

SegmentView parse_segment(std::span<const std::uint8_t> bytes) {
  io::ByteReader in(bytes);
  SegmentView seg;
  seg.header = read_header(in);
  const auto& h = seg.header;

  std::uint64_t cursor = kHeaderBytes;
  auto claim = [&](const Section& s, const char* name) {
    if (s.offset % 8 != 0 || s.offset < cursor || s.offset > bytes.size() ||
        s.length > bytes.size() - s.offset)
      corrupt(std::string(name) + " section out of bounds");
    cursor = s.offset + s.length;
    return bytes.subspan(static_cast<std::size_t>(s.offset),
                         static_cast<std::size_t>(s.length));
  };
  seg.codebook = claim(h.codebook, "codebook");
  seg.symbols = claim(h.symbols, "symbol");
  seg.outliers = claim(h.outliers, "outlier");
  seg.end = static_cast<std::size_t>(std::min<std::uint64_t>((cursor + 7) / 8 * 8,
                                                             bytes.size()));

  const bool needs_book = h.workflow != Workflow::Rle;
  if (h.codebook.length != (needs_book ? h.cap : 0))
    corrupt("codebook section inconsistent with workflow");
  if (h.outliers.length != h.outlier_count * 16)
    corrupt("outlier section length does not match outlier count");
  return seg;
}

std::vector<SegmentView> parse_archive(std::span<const std::uint8_t> bytes) {
  std::vector<SegmentView> segments;
  std::size_t pos = 0;
  do {
    segments.push_back(parse_segment(bytes.subspan(pos)));
    pos += segments.back().end;
  } while (pos < bytes.size());
  return segments;
}

EncodedSymbols encode_symbols(std::span<const std::uint32_t> stream,
                              Workflow workflow, std::uint32_t cap,
                              const Histogram* stream_hist) {
  EncodedSymbols enc;
  io::ByteWriter out;
  if (workflow == Workflow::Huffman) {
    const Histogram hist = stream_hist ? *stream_hist : histogram(stream, cap);
    const Codebook book = build_codebook(hist);
    enc.codebook = book.lengths;
    write_bitstream(out, encode(stream, book), stream.size());
    enc.section = out.take();
    return enc;
  }

  const RleRuns runs = rle_encode(stream);
  out.put<std::uint64_t>(runs.size());
  out.put<std::uint64_t>(stream.size());
  if (workflow == Workflow::Rle) {
    if (cap <= 65536) {
      for (auto v : runs.values) out.put<std::uint16_t>(static_cast<std::uint16_t>(v));
    } else {
      out.put_array<std::uint32_t>(runs.values);
    }
  } else {
    const Codebook book = build_codebook(histogram(runs.values, cap));
    enc.codebook = book.lengths;
    write_bitstream(out, encode(runs.values, book), runs.size());
  }
  out.put_array<std::uint32_t>(runs.lengths);
  enc.section = out.take();
  return enc;
}

std::vector<std::uint32_t> decode_symbols(const SegmentView& seg) {
  const auto& h = seg.header;
  io::ByteReader in(seg.symbols);
  std::vector<std::uint32_t> stream;

  if (h.workflow == Workflow::Huffman) {
    const auto book = Codebook::from_lengths({seg.codebook.begin(), seg.codebook.end()});
    std::uint64_t n = 0;
    const BitStream bits = read_bitstream(in, n);
    if (n != h.count) corrupt("symbol count does not match element count");
    stream = decode(bits, book, n);
  } else {
    RleRuns runs;
    const auto n_runs = in.get<std::uint64_t>();
    const auto total = in.get<std::uint64_t>();
    if (total != h.count) corrupt("run total does not match element count");
    if (n_runs > total) corrupt("more runs than symbols");
    if (h.workflow == Workflow::Rle) {
      if (h.cap <= 65536) {
        const auto raw = in.get_array<std::uint16_t>(n_runs);
        runs.values.assign(raw.begin(), raw.end());
      } else {
        runs.values = in.get_array<std::uint32_t>(n_runs);
      }
      for (auto v : runs.values)
        if (v >= h.cap) corrupt("run value outside dictionary");
    } else {
      const auto book =
          Codebook::from_lengths({seg.codebook.begin(), seg.codebook.end()});
      std::uint64_t n = 0;
      const BitStream bits = read_bitstream(in, n);
      if (n != n_runs) corrupt("run value count mismatch");
      runs.values = decode(bits, book, n);
    }
    runs.lengths = in.get_array<std::uint32_t>(n_runs);
    if (runs.total() != total) corrupt("run lengths do not sum to the total");
    stream = rle_decode(runs);
  }
  if (in.remaining() != 0) corrupt("trailing bytes in symbol section");
  return stream;
}

std::vector<std::uint8_t> encode_outliers(const OutlierList& outliers) {
  io::ByteWriter out;
  for (const auto& o : outliers) {
    out.put<std::uint64_t>(o.index);
    out.put<std::int64_t>(o.delta);
  }
  return out.take();
}

OutlierList decode_outliers(const SegmentView& seg) {
  io::ByteReader in(seg.outliers);
  OutlierList out(static_cast<std::size_t>(seg.header.outlier_count));
  for (auto& o : out) {
    o.index = in.get<std::uint64_t>();
    o.delta = in.get<std::int64_t>();
  }
  return out;
}

}  // namespace lzebc
