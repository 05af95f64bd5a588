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

#ifndef LZEBC_QUANTIZER_HPP_
#define LZEBC_QUANTIZER_HPP_

#include <concepts>
#include <cstdint>
#include <vector>

#include "lzebc/grid.hpp"

namespace lzebc {

/// Prequantized magnitudes are kept below 2^59 so that the seven-term 3D
/// predictor and its delta cannot overflow signed 64-bit arithmetic.
inline constexpr std::int64_t kPrequantLimit = std::int64_t{1} << 59;

struct QuantConfig {
  std::uint32_t cap = 1024;  // quant-code dictionary size, power of two
  double eb_abs = 0;         // absolute bound used for (de)quantization

  std::int64_t radius() const { return cap / 2; }
  void validate() const;
};

enum class EbMode : std::uint8_t { Abs = 0, Rel = 1 };

/// User-facing error bound, either absolute or relative to the value range.
struct ErrorBound {
  EbMode mode = EbMode::Rel;
  double value = 1e-4;

  /// Absolute bound for a field with the given range. Throws on a
  /// degenerate range in relative mode.
  double absolute(double vmin, double vmax) const;
};

/// Quantization step half-width that keeps reconstructions within eb_abs
/// after they are rounded to T. The margin covers the rounding of
/// d * 2eb to T and the double arithmetic before it; it is a pure function
/// of its arguments so a decoder recomputes it from the archive header.
template <std::floating_point T>
double quantization_bound(double eb_abs, double vmin, double vmax);

struct PrequantGrid {
  Dims dims;
  std::vector<std::int64_t> codes;
};

struct QuantGrid {
  Dims dims;
  std::vector<std::uint32_t> codes;
};

struct Outlier {
  std::uint64_t index = 0;
  std::int64_t delta = 0;

  friend bool operator==(const Outlier&, const Outlier&) = default;
};

/// Sorted by index, no duplicates.
using OutlierList = std::vector<Outlier>;

/// round(d / (2 eb)), ties away from zero.
std::int64_t prequantize_value(double d, double eb_abs);

template <std::floating_point T>
PrequantGrid prequantize(const Field<T>& field, const QuantConfig& cfg,
                         unsigned threads = 1);

/// Same, over raw samples laid out on `dims`.
template <std::floating_point T>
PrequantGrid prequantize(const Dims& dims, std::span<const T> values,
                         const QuantConfig& cfg, unsigned threads = 1);

/// First-order Lorenzo prediction at chunk-local (x, y, z). `at` reads
/// already-known chunk-local values; neighbors before the chunk origin
/// contribute zero.
template <class Get>
std::int64_t lorenzo_predict(Get&& at, int ndim, std::size_t x, std::size_t y,
                             std::size_t z) {
  const bool w = x > 0, n = y > 0, b = z > 0;
  auto v = [&](bool present, std::size_t i, std::size_t j, std::size_t k) {
    return present ? static_cast<std::int64_t>(at(i, j, k)) : std::int64_t{0};
  };
  switch (ndim) {
    case 1:
      return v(w, x - 1, y, z);
    case 2:
      return -v(w && n, x - 1, y - 1, z) + v(n, x, y - 1, z) + v(w, x - 1, y, z);
    default:
      return v(w && n && b, x - 1, y - 1, z - 1) - v(n && b, x, y - 1, z - 1) -
             v(w && n, x - 1, y - 1, z) + v(n, x, y - 1, z) -
             v(w && b, x - 1, y, z - 1) + v(b, x, y, z - 1) + v(w, x - 1, y, z);
  }
}

/// Postquantizes one chunk: writes quant-codes into `quant` at grid
/// positions and appends out-of-range deltas (grid indices, in chunk
/// row-major order) to `outliers`.
void construct_chunk(const PrequantGrid& prequant, const ChunkView& chunk,
                     const QuantConfig& cfg, QuantGrid& quant,
                     OutlierList& outliers);

struct Quantized {
  QuantGrid quant;
  OutlierList outliers;
};

/// construct_chunk over every chunk; outliers merged by index.
Quantized construct(const PrequantGrid& prequant, const ChunkSpec& spec,
                    const QuantConfig& cfg, unsigned threads = 1);

/// Element-by-element reconstruction of one chunk, in row-major order, each
/// value predicted from those already rebuilt. Returns a dense buffer of the
/// chunk's extent.
std::vector<std::int64_t> sequential_reconstruct_oracle(
    const QuantGrid& quant, const OutlierList& outliers,
    const ChunkView& chunk, const QuantConfig& cfg);

/// Whole-grid form of the oracle.
PrequantGrid sequential_reconstruct_oracle(const QuantGrid& quant,
                                           const OutlierList& outliers,
                                           const ChunkSpec& spec,
                                           const QuantConfig& cfg);

}  // namespace lzebc

#endif  // LZEBC_QUANTIZER_HPP_
