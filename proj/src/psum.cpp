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

#include "lzebc/psum.hpp"

#include <string>

#include "lzebc/parallel.hpp"

namespace lzebc {

DeltaGrid fuse(const QuantGrid& quant, const OutlierList& outliers,
               const QuantConfig& cfg) {
  const std::int64_t r = cfg.radius();
  DeltaGrid out{quant.dims, std::vector<std::int64_t>(quant.codes.size())};
  for (std::size_t i = 0; i < quant.codes.size(); ++i)
    out.deltas[i] = static_cast<std::int64_t>(quant.codes[i]) - r;

  std::uint64_t prev = 0;
  for (std::size_t k = 0; k < outliers.size(); ++k) {
    const auto& o = outliers[k];
    if (o.index >= out.deltas.size())
      throw Error(ErrorKind::Corruption,
                  "outlier index " + std::to_string(o.index) + " outside grid");
    if (k > 0 && o.index <= prev)
      throw Error(ErrorKind::Corruption, "outlier indices not strictly increasing");
    prev = o.index;
    if (__builtin_add_overflow(out.deltas[o.index], o.delta, &out.deltas[o.index]))
      throw Error(ErrorKind::Overflow, "outlier delta overflows int64");
  }
  return out;
}

void prefix_sum_axis(GridSpan<std::int64_t> chunk, Axis axis) {
  const auto& e = chunk.extent;
  const int a = static_cast<int>(axis);
  // (u, v) enumerate the lines orthogonal to the summed axis.
  const int ua = a == 0 ? 1 : 0;
  const int va = a == 2 ? 1 : 2;
  for (std::size_t v = 0; v < e[va]; ++v)
    for (std::size_t u = 0; u < e[ua]; ++u) {
      std::array<std::size_t, 3> at{};
      at[ua] = u;
      at[va] = v;
      std::int64_t running = 0;
      for (std::size_t s = 0; s < e[a]; ++s) {
        at[a] = s;
        std::int64_t& cell = chunk(at[0], at[1], at[2]);
        if (__builtin_add_overflow(running, cell, &running))
          throw Error(ErrorKind::Overflow,
                      "partial sum overflows int64; error bound too small for data scale");
        cell = running;
      }
    }
}

void reconstruct_chunk(GridSpan<std::int64_t> chunk, int ndim) {
  prefix_sum_axis(chunk, Axis::X);
  if (ndim >= 2) prefix_sum_axis(chunk, Axis::Y);
  if (ndim >= 3) prefix_sum_axis(chunk, Axis::Z);
}

PrequantGrid reconstruct(DeltaGrid deltas, const ChunkSpec& spec,
                         unsigned threads) {
  const auto chunks = partition(deltas.dims, spec);
  parallel_for(chunks.size(), threads, [&](std::size_t i) {
    reconstruct_chunk(chunk_span(deltas.deltas.data(), deltas.dims, chunks[i]),
                      deltas.dims.ndim);
  });
  return {deltas.dims, std::move(deltas.deltas)};
}

template <std::floating_point T>
Field<T> dequantize(const PrequantGrid& prequant, const QuantConfig& cfg,
                    unsigned threads) {
  std::vector<T> values(prequant.codes.size());
  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (values.size() + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(values.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i)
      values[i] = static_cast<T>(dequantize_value(prequant.codes[i], cfg.eb_abs));
  });
  return Field<T>(prequant.dims, std::move(values));
}

template Field<float> dequantize(const PrequantGrid&, const QuantConfig&, unsigned);
template Field<double> dequantize(const PrequantGrid&, const QuantConfig&, unsigned);

}  // namespace lzebc
