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

#include "lzebc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lzebc/codebook.hpp"
#include "lzebc/psum.hpp"

namespace lzebc {

namespace {

Dims with_outer_extent(const Dims& dims, std::size_t outer) {
  switch (dims.ndim) {
    case 1: return Dims(outer);
    case 2: return Dims(dims.nx, outer);
    default: return Dims(dims.nx, dims.ny, outer);
  }
}

Workflow resolve(WorkflowChoice choice, const Histogram& hist,
                 const SelectOptions& select) {
  switch (choice) {
    case WorkflowChoice::Huffman: return Workflow::Huffman;
    case WorkflowChoice::Rle: return Workflow::Rle;
    case WorkflowChoice::RleVle: return Workflow::RleVle;
    case WorkflowChoice::Auto: break;
  }
  return select_workflow(hist, select).chosen;
}

}  // namespace

template <std::floating_point T>
Archive compress(const Field<T>& field, const CompressOptions& opt) {
  if (opt.cap > kMaxCap)
    throw Error(ErrorKind::Usage, "cap exceeds " + std::to_string(kMaxCap));
  const Dims& dims = field.dims();
  const ChunkSpec spec = opt.chunk.value_or(ChunkSpec::defaults(dims.ndim));
  spec.validate();

  Archive ar;
  ar.eb_abs = opt.eb.absolute(field.vmin(), field.vmax());
  const QuantConfig cfg{opt.cap,
                        quantization_bound<T>(ar.eb_abs, field.vmin(), field.vmax())};
  cfg.validate();

  const int outer = dims.ndim - 1;
  const std::size_t extent = dims.extent(outer);
  const std::uint64_t plane = dims.count() / extent;
  std::size_t rows = extent;
  if (dims.count() * sizeof(T) > opt.segment_bytes) {
    const std::size_t edge = spec.edge(outer);
    const std::uint64_t fit = opt.segment_bytes / sizeof(T) / plane;
    rows = std::min<std::size_t>(extent, std::max<std::uint64_t>(edge, fit / edge * edge));
  }

  io::ByteWriter out;
  for (std::size_t start = 0; start < extent; start += rows) {
    const std::size_t n = std::min(rows, extent - start);
    const Dims seg_dims = with_outer_extent(dims, n);
    const auto values = field.values().subspan(start * plane, n * plane);

    const auto prequant = prequantize(seg_dims, values, cfg, opt.threads);
    const auto quantized = construct(prequant, spec, cfg, opt.threads);
    const auto stream = flatten_chunk_major<std::uint32_t>(
        quantized.quant.codes, seg_dims, partition(seg_dims, spec));
    const Histogram hist = histogram(stream, cfg.cap, opt.threads);

    ArchiveHeader h;
    h.dtype = dtype_of<T>();
    h.dims = seg_dims;
    h.chunk = spec;
    h.eb = opt.eb;
    h.vmin = field.vmin();
    h.vmax = field.vmax();
    h.cap = cfg.cap;
    h.workflow = resolve(opt.workflow, hist, opt.select);
    const auto enc = encode_symbols(stream, h.workflow, cfg.cap, &hist);
    write_segment(out, h, enc.codebook, enc.section, quantized.outliers);

    if (ar.segments == 0) ar.workflow = h.workflow;
    ++ar.segments;
    ar.payload_bytes += enc.section.size();
    ar.outliers += quantized.outliers.size();
  }
  ar.bytes = out.take();
  return ar;
}

template Archive compress(const Field<float>&, const CompressOptions&);
template Archive compress(const Field<double>&, const CompressOptions&);

namespace {

DecodedSegment decode_segment(const SegmentView& seg) {
  const auto& h = seg.header;
  const auto stream = decode_symbols(seg);
  if (stream.size() != h.count)
    throw Error(ErrorKind::Corruption, "invalid archive: symbol count mismatch");
  DecodedSegment d;
  d.header = h;
  d.quant = {h.dims, scatter_chunk_major<std::uint32_t>(stream, h.dims,
                                                        partition(h.dims, h.chunk))};
  d.outliers = decode_outliers(seg);
  return d;
}

}  // namespace

std::vector<DecodedSegment> decode_archive(std::span<const std::uint8_t> bytes) {
  std::vector<DecodedSegment> out;
  for (const auto& seg : parse_archive(bytes)) out.push_back(decode_segment(seg));
  return out;
}

template <std::floating_point T>
Field<T> decompress_as(std::span<const std::uint8_t> bytes, unsigned threads) {
  const auto segments = parse_archive(bytes);
  const auto& first = segments.front().header;
  if (first.dtype != dtype_of<T>())
    throw Error(ErrorKind::Usage, "archive scalar type differs from the requested one");

  try {
    std::vector<T> values;
    values.reserve(static_cast<std::size_t>(first.count));
    std::size_t outer_total = 0;
    const int outer = first.dims.ndim - 1;
    for (const auto& seg : segments) {
      const auto& h = seg.header;
      if (h.dtype != first.dtype || h.dims.ndim != first.dims.ndim ||
          (outer > 0 && h.dims.nx != first.dims.nx) ||
          (outer > 1 && h.dims.ny != first.dims.ny))
        throw Error(ErrorKind::Corruption, "invalid archive: segments do not stack");

      auto decoded = decode_segment(seg);
      const double eb_abs = h.eb.absolute(h.vmin, h.vmax);
      const QuantConfig cfg{h.cap, quantization_bound<T>(eb_abs, h.vmin, h.vmax)};
      auto prequant =
          reconstruct(fuse(decoded.quant, decoded.outliers, cfg), h.chunk, threads);
      const auto part = dequantize<T>(prequant, cfg, threads);
      values.insert(values.end(), part.values().begin(), part.values().end());
      outer_total += h.dims.extent(outer);
    }

    Dims dims;
    switch (first.dims.ndim) {
      case 1: dims = Dims(outer_total); break;
      case 2: dims = Dims(first.dims.nx, outer_total); break;
      default: dims = Dims(first.dims.nx, first.dims.ny, outer_total); break;
    }
    return Field<T>(dims, std::move(values));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Corruption) throw;
    throw Error(ErrorKind::Corruption, std::string("invalid archive: ") + e.what());
  }
}

template Field<float> decompress_as<float>(std::span<const std::uint8_t>, unsigned);
template Field<double> decompress_as<double>(std::span<const std::uint8_t>, unsigned);

AnyField decompress(std::span<const std::uint8_t> bytes, unsigned threads) {
  const auto head = parse_segment(bytes);
  if (head.header.dtype == Dtype::F32) return decompress_as<float>(bytes, threads);
  return decompress_as<double>(bytes, threads);
}

template <std::floating_point T>
QualityStats stats(const Field<T>& original, const Field<T>& reconstructed,
                   std::uint64_t archive_bytes) {
  if (original.dims() != reconstructed.dims())
    throw Error(ErrorKind::Data, "fields have different dims");
  QualityStats s;
  const auto a = original.values();
  const auto b = reconstructed.values();
  double sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
    s.max_abs_err = std::max(s.max_abs_err, e);
    sq += e * e;
  }
  s.rmse = std::sqrt(sq / static_cast<double>(a.size()));
  s.psnr = s.rmse == 0 ? std::numeric_limits<double>::infinity()
                       : 20 * std::log10(original.range() / s.rmse);
  if (archive_bytes > 0)
    s.compression_ratio = static_cast<double>(a.size() * sizeof(T)) /
                          static_cast<double>(archive_bytes);
  return s;
}

template QualityStats stats(const Field<float>&, const Field<float>&, std::uint64_t);
template QualityStats stats(const Field<double>&, const Field<double>&, std::uint64_t);

std::string format_stats(const QualityStats& s) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  if (s.compression_ratio) os << "cr=" << *s.compression_ratio << ' ';
  os << "max_abs_err=" << s.max_abs_err << " rmse=" << s.rmse << " psnr=";
  if (std::isinf(s.psnr) && s.psnr > 0) {
    os << "inf";
  } else {
    os << s.psnr;
  }
  return os.str();
}

}  // namespace lzebc
