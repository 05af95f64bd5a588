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

#include "lzebc/quantizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "lzebc/parallel.hpp"

namespace lzebc {

void QuantConfig::validate() const {
  if (cap < 4 || !std::has_single_bit(cap))
    throw Error(ErrorKind::Usage, "cap must be a power of two >= 4, got " +
                                      std::to_string(cap));
  if (!(eb_abs > 0) || !std::isfinite(eb_abs))
    throw Error(ErrorKind::Usage, "error bound must be positive and finite");
}

double ErrorBound::absolute(double vmin, double vmax) const {
  if (!(value > 0) || !std::isfinite(value))
    throw Error(ErrorKind::Usage, "error bound must be positive and finite");
  if (mode == EbMode::Abs) return value;
  const double range = vmax - vmin;
  if (!(range > 0))
    throw Error(ErrorKind::Usage,
                "field has a degenerate value range; use an absolute error bound");
  return value * range;
}

template <std::floating_point T>
double quantization_bound(double eb_abs, double vmin, double vmax) {
  if (!(eb_abs > 0) || !std::isfinite(eb_abs))
    throw Error(ErrorKind::Usage, "error bound must be positive and finite");
  const double mag = std::max(std::abs(vmin), std::abs(vmax)) + eb_abs;
  if (!(mag <= static_cast<double>(std::numeric_limits<T>::max())))
    throw Error(ErrorKind::Usage,
                "error bound pushes reconstructions outside the scalar range");

  int exp = 0;
  std::frexp(mag, &exp);
  const double ulp_t =
      std::max(std::ldexp(1.0, exp - std::numeric_limits<T>::digits),
               static_cast<double>(std::numeric_limits<T>::denorm_min()));
  const double ulp_d = std::ldexp(1.0, exp - std::numeric_limits<double>::digits);

  // A reconstruction g within e of a representable sample x rounds to a T
  // value within min(e + ulp_t/2, 2e) of x.
  const double margin = ulp_t + 4 * ulp_d;
  if (margin <= eb_abs / 2) return eb_abs - margin;
  const double halved = (eb_abs - 4 * ulp_d) / 2;
  if (!(halved > 0))
    throw Error(ErrorKind::Overflow,
                "error bound is below the floating-point resolution of the data; "
                "use a larger bound");
  return halved;
}

template double quantization_bound<float>(double, double, double);
template double quantization_bound<double>(double, double, double);

std::int64_t prequantize_value(double d, double eb_abs) {
  const double scaled = d / (2 * eb_abs);
  if (!(std::abs(scaled) < static_cast<double>(kPrequantLimit)))
    throw Error(ErrorKind::Overflow,
                "value " + std::to_string(d) +
                    " overflows the integer range at this error bound; "
                    "use a larger bound");
  return static_cast<std::int64_t>(std::round(scaled));
}

template <std::floating_point T>
PrequantGrid prequantize(const Field<T>& field, const QuantConfig& cfg,
                         unsigned threads) {
  return prequantize(field.dims(), field.values(), cfg, threads);
}

template <std::floating_point T>
PrequantGrid prequantize(const Dims& dims, std::span<const T> values,
                         const QuantConfig& cfg, unsigned threads) {
  cfg.validate();
  if (values.size() != dims.count())
    throw Error(ErrorKind::Usage, "sample count does not match dims");
  PrequantGrid out{dims, std::vector<std::int64_t>(values.size())};
  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (values.size() + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(values.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i)
      out.codes[i] = prequantize_value(values[i], cfg.eb_abs);
  });
  return out;
}

template PrequantGrid prequantize(const Field<float>&, const QuantConfig&, unsigned);
template PrequantGrid prequantize(const Field<double>&, const QuantConfig&, unsigned);
template PrequantGrid prequantize(const Dims&, std::span<const float>, const QuantConfig&,
                                  unsigned);
template PrequantGrid prequantize(const Dims&, std::span<const double>, const QuantConfig&,
                                  unsigned);

void construct_chunk(const PrequantGrid& prequant, const ChunkView& chunk,
                     const QuantConfig& cfg, QuantGrid& quant,
                     OutlierList& outliers) {
  const auto& dims = prequant.dims;
  const std::int64_t r = cfg.radius();
  const auto in = chunk_span(prequant.codes.data(), dims, chunk);
  const auto out = chunk_span(quant.codes.data(), dims, chunk);
  const std::uint64_t base = linear_index(dims, chunk.origin[0], chunk.origin[1],
                                          chunk.origin[2]);

  for (std::size_t z = 0; z < chunk.extent[2]; ++z)
    for (std::size_t y = 0; y < chunk.extent[1]; ++y)
      for (std::size_t x = 0; x < chunk.extent[0]; ++x) {
        const std::int64_t p = lorenzo_predict(in, dims.ndim, x, y, z);
        const std::int64_t delta = in(x, y, z) - p;
        if (delta > -r && delta < r) {
          out(x, y, z) = static_cast<std::uint32_t>(delta + r);
        } else {
          out(x, y, z) = static_cast<std::uint32_t>(r);
          outliers.push_back({base + x + dims.nx * (y + dims.ny * z), delta});
        }
      }
}

Quantized construct(const PrequantGrid& prequant, const ChunkSpec& spec,
                    const QuantConfig& cfg, unsigned threads) {
  cfg.validate();
  const auto chunks = partition(prequant.dims, spec);
  Quantized result{{prequant.dims, std::vector<std::uint32_t>(prequant.codes.size())},
                   {}};
  std::vector<OutlierList> per_chunk(chunks.size());
  parallel_for(chunks.size(), threads, [&](std::size_t i) {
    construct_chunk(prequant, chunks[i], cfg, result.quant, per_chunk[i]);
  });

  std::size_t total = 0;
  for (const auto& list : per_chunk) total += list.size();
  result.outliers.reserve(total);
  for (const auto& list : per_chunk)
    result.outliers.insert(result.outliers.end(), list.begin(), list.end());
  std::sort(result.outliers.begin(), result.outliers.end(),
            [](const Outlier& a, const Outlier& b) { return a.index < b.index; });
  return result;
}

std::vector<std::int64_t> sequential_reconstruct_oracle(
    const QuantGrid& quant, const OutlierList& outliers,
    const ChunkView& chunk, const QuantConfig& cfg) {
  const auto& dims = quant.dims;
  const std::int64_t r = cfg.radius();
  std::vector<std::int64_t> out(chunk.count());
  const auto rebuilt = dense_span(out.data(), chunk.extent);

  for (std::size_t z = 0; z < chunk.extent[2]; ++z)
    for (std::size_t y = 0; y < chunk.extent[1]; ++y)
      for (std::size_t x = 0; x < chunk.extent[0]; ++x) {
        const std::uint64_t gi = linear_index(dims, chunk.origin[0] + x,
                                              chunk.origin[1] + y,
                                              chunk.origin[2] + z);
        auto hit = std::lower_bound(
            outliers.begin(), outliers.end(), gi,
            [](const Outlier& o, std::uint64_t i) { return o.index < i; });
        const std::int64_t delta =
            (hit != outliers.end() && hit->index == gi)
                ? hit->delta
                : static_cast<std::int64_t>(quant.codes[gi]) - r;
        rebuilt(x, y, z) = lorenzo_predict(rebuilt, dims.ndim, x, y, z) + delta;
      }
  return out;
}

PrequantGrid sequential_reconstruct_oracle(const QuantGrid& quant,
                                           const OutlierList& outliers,
                                           const ChunkSpec& spec,
                                           const QuantConfig& cfg) {
  PrequantGrid out{quant.dims, std::vector<std::int64_t>(quant.codes.size())};
  for (const auto& chunk : partition(quant.dims, spec)) {
    const auto local = sequential_reconstruct_oracle(quant, outliers, chunk, cfg);
    const auto dst = chunk_span(out.codes.data(), quant.dims, chunk);
    const auto src = dense_span(local.data(), chunk.extent);
    for (std::size_t z = 0; z < chunk.extent[2]; ++z)
      for (std::size_t y = 0; y < chunk.extent[1]; ++y)
        for (std::size_t x = 0; x < chunk.extent[0]; ++x) dst(x, y, z) = src(x, y, z);
  }
  return out;
}

}  // namespace lzebc
