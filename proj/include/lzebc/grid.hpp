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

#ifndef LZEBC_GRID_HPP_
#define LZEBC_GRID_HPP_

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lzebc/error.hpp"

namespace lzebc {

/// Extent of a 1D, 2D or 3D grid. Layout is row-major with x fastest:
/// the flat offset of (x, y, z) is x + nx * (y + ny * z).
struct Dims {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nz = 1;
  int ndim = 1;

  Dims() = default;
  explicit Dims(std::size_t x);
  Dims(std::size_t x, std::size_t y);
  Dims(std::size_t x, std::size_t y, std::size_t z);

  /// Builds from 1 to 3 extents, x first.
  static Dims from_extents(std::span<const std::size_t> extents);

  std::uint64_t count() const { return std::uint64_t{nx} * ny * nz; }
  std::size_t extent(int axis) const {
    return axis == 0 ? nx : axis == 1 ? ny : nz;
  }

  friend bool operator==(const Dims&, const Dims&) = default;
};

std::uint64_t linear_index(const Dims& dims, std::size_t x, std::size_t y,
                           std::size_t z);

/// Chunk edge lengths per axis.
struct ChunkSpec {
  std::size_t cx = 256;
  std::size_t cy = 1;
  std::size_t cz = 1;

  /// 1D: 256; 2D: 16x16; 3D: 8x8x8.
  static ChunkSpec defaults(int ndim);

  std::size_t edge(int axis) const {
    return axis == 0 ? cx : axis == 1 ? cy : cz;
  }
  void validate() const;

  friend bool operator==(const ChunkSpec&, const ChunkSpec&) = default;
};

struct ChunkView {
  std::array<std::size_t, 3> origin{};
  std::array<std::size_t, 3> extent{1, 1, 1};  // clipped at the boundary
  std::size_t index = 0;

  std::size_t count() const { return extent[0] * extent[1] * extent[2]; }
};

/// Tiles the grid with chunks in row-major chunk order (x-chunks fastest).
/// Boundary chunks are clipped, never padded.
std::vector<ChunkView> partition(const Dims& dims, const ChunkSpec& spec);

/// Strided 3D window onto a flat buffer.
template <class T>
struct GridSpan {
  T* data = nullptr;
  std::array<std::size_t, 3> extent{1, 1, 1};
  std::size_t stride_y = 1;
  std::size_t stride_z = 1;

  T& operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return data[x + stride_y * y + stride_z * z];
  }
};

/// Window covering one chunk of a grid-shaped buffer.
template <class T>
GridSpan<T> chunk_span(T* grid, const Dims& dims, const ChunkView& chunk) {
  const auto& o = chunk.origin;
  return {grid + o[0] + dims.nx * (o[1] + dims.ny * o[2]), chunk.extent,
          dims.nx, dims.nx * dims.ny};
}

/// Window over a dense buffer of the given extent.
template <class T>
GridSpan<T> dense_span(T* data, std::array<std::size_t, 3> extent) {
  return {data, extent, extent[0], extent[0] * extent[1]};
}

/// Reorders a grid-layout buffer into the chunk-major stream: chunks in
/// ordinal order, row-major inside each chunk.
template <class T>
std::vector<T> flatten_chunk_major(std::span<const T> grid, const Dims& dims,
                                   const std::vector<ChunkView>& chunks) {
  std::vector<T> out;
  out.reserve(grid.size());
  for (const auto& c : chunks) {
    auto view = chunk_span(grid.data(), dims, c);
    for (std::size_t z = 0; z < c.extent[2]; ++z)
      for (std::size_t y = 0; y < c.extent[1]; ++y)
        for (std::size_t x = 0; x < c.extent[0]; ++x) out.push_back(view(x, y, z));
  }
  return out;
}

/// Inverse of flatten_chunk_major.
template <class T>
std::vector<T> scatter_chunk_major(std::span<const T> stream, const Dims& dims,
                                   const std::vector<ChunkView>& chunks) {
  std::vector<T> grid(stream.size());
  std::size_t k = 0;
  for (const auto& c : chunks) {
    auto view = chunk_span(grid.data(), dims, c);
    for (std::size_t z = 0; z < c.extent[2]; ++z)
      for (std::size_t y = 0; y < c.extent[1]; ++y)
        for (std::size_t x = 0; x < c.extent[0]; ++x) view(x, y, z) = stream[k++];
  }
  return grid;
}

enum class Dtype : std::uint8_t { F32 = 0, F64 = 1 };

template <std::floating_point T>
constexpr Dtype dtype_of() {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  return sizeof(T) == 4 ? Dtype::F32 : Dtype::F64;
}

inline std::size_t dtype_size(Dtype t) { return t == Dtype::F32 ? 4 : 8; }

/// A grid of finite floating-point samples with its observed value range.
template <std::floating_point T>
class Field {
 public:
  using Scalar = T;

  /// Throws ErrorKind::Ingest on a size mismatch or a non-finite value.
  Field(Dims dims, std::vector<T> values);

  const Dims& dims() const { return dims_; }
  std::span<const T> values() const { return values_; }
  std::vector<T> release() && { return std::move(values_); }
  double vmin() const { return vmin_; }
  double vmax() const { return vmax_; }
  double range() const { return vmax_ - vmin_; }

 private:
  Dims dims_;
  std::vector<T> values_;
  double vmin_ = 0;
  double vmax_ = 0;
};

/// Decodes a headerless little-endian scalar stream.
template <std::floating_point T>
Field<T> ingest(std::span<const std::uint8_t> bytes, const Dims& dims);

/// Raw little-endian bytes of a field's samples.
template <std::floating_point T>
std::vector<std::uint8_t> to_bytes(const Field<T>& field);

extern template class Field<float>;
extern template class Field<double>;

}  // namespace lzebc

#endif  // LZEBC_GRID_HPP_
