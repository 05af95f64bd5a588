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

#ifndef LZEBC_PSUM_HPP_
#define LZEBC_PSUM_HPP_

#include <concepts>
#include <cstdint>
#include <vector>

#include "lzebc/grid.hpp"
#include "lzebc/quantizer.hpp"

namespace lzebc {

/// Fused prediction deltas: q - r at regular positions, the stored delta at
/// outlier positions.
struct DeltaGrid {
  Dims dims;
  std::vector<std::int64_t> deltas;
};

/// q' = (q + outlier delta) - r. Throws ErrorKind::Corruption on an outlier
/// index outside the grid or out of order.
DeltaGrid fuse(const QuantGrid& quant, const OutlierList& outliers,
               const QuantConfig& cfg);

enum class Axis { X = 0, Y = 1, Z = 2 };

/// In-place inclusive running sum along one axis, every orthogonal line
/// independently. Throws ErrorKind::Overflow if a sum leaves int64.
void prefix_sum_axis(GridSpan<std::int64_t> chunk, Axis axis);

/// Rebuilds prequantized values of one chunk in place: prefix sums along x,
/// then y (2D, 3D), then z (3D).
void reconstruct_chunk(GridSpan<std::int64_t> chunk, int ndim);

/// reconstruct_chunk over every chunk of the grid.
PrequantGrid reconstruct(DeltaGrid deltas, const ChunkSpec& spec,
                         unsigned threads = 1);

inline double dequantize_value(std::int64_t code, double eb_abs) {
  return static_cast<double>(code) * (2 * eb_abs);
}

/// d * 2eb, rounded to T.
template <std::floating_point T>
Field<T> dequantize(const PrequantGrid& prequant, const QuantConfig& cfg,
                    unsigned threads = 1);

}  // namespace lzebc

#endif  // LZEBC_PSUM_HPP_
