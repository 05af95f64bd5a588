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

#include "lzebc/grid.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace lzebc {

namespace {

void check_extents(std::size_t x, std::size_t y, std::size_t z) {
  if (x == 0 || y == 0 || z == 0)
    throw Error(ErrorKind::Usage, "grid extents must be >= 1");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (std::uint64_t{y} > kMax / x || std::uint64_t{z} > kMax / (std::uint64_t{x} * y))
    throw Error(ErrorKind::Usage, "grid element count overflows 64 bits");
}

}  // namespace

Dims::Dims(std::size_t x) : nx(x), ndim(1) { check_extents(nx, ny, nz); }

Dims::Dims(std::size_t x, std::size_t y) : nx(x), ny(y), ndim(2) {
  check_extents(nx, ny, nz);
}

Dims::Dims(std::size_t x, std::size_t y, std::size_t z)
    : nx(x), ny(y), nz(z), ndim(3) {
  check_extents(nx, ny, nz);
}

Dims Dims::from_extents(std::span<const std::size_t> extents) {
  switch (extents.size()) {
    case 1: return Dims(extents[0]);
    case 2: return Dims(extents[0], extents[1]);
    case 3: return Dims(extents[0], extents[1], extents[2]);
    default:
      throw Error(ErrorKind::Usage, "grids must have 1 to 3 dimensions");
  }
}

std::uint64_t linear_index(const Dims& dims, std::size_t x, std::size_t y,
                           std::size_t z) {
  if (x >= dims.nx || y >= dims.ny || z >= dims.nz)
    throw Error(ErrorKind::Address,
                "coordinate (" + std::to_string(x) + "," + std::to_string(y) +
                    "," + std::to_string(z) + ") outside grid");
  return x + std::uint64_t{dims.nx} * (y + std::uint64_t{dims.ny} * z);
}

ChunkSpec ChunkSpec::defaults(int ndim) {
  switch (ndim) {
    case 1: return {256, 1, 1};
    case 2: return {16, 16, 1};
    default: return {8, 8, 8};
  }
}

void ChunkSpec::validate() const {
  if (cx == 0 || cy == 0 || cz == 0)
    throw Error(ErrorKind::Usage, "chunk edges must be >= 1");
}

std::vector<ChunkView> partition(const Dims& dims, const ChunkSpec& spec) {
  spec.validate();
  std::array<std::size_t, 3> n{};
  for (int a = 0; a < 3; ++a)
    n[a] = (dims.extent(a) + spec.edge(a) - 1) / spec.edge(a);

  std::vector<ChunkView> chunks;
  chunks.reserve(n[0] * n[1] * n[2]);
  for (std::size_t k = 0; k < n[2]; ++k)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t i = 0; i < n[0]; ++i) {
        ChunkView c;
        const std::array<std::size_t, 3> pos{i, j, k};
        for (int a = 0; a < 3; ++a) {
          c.origin[a] = pos[a] * spec.edge(a);
          c.extent[a] = std::min(spec.edge(a), dims.extent(a) - c.origin[a]);
        }
        c.index = chunks.size();
        chunks.push_back(c);
      }
  return chunks;
}

template <std::floating_point T>
Field<T>::Field(Dims dims, std::vector<T> values)
    : dims_(dims), values_(std::move(values)) {
  if (values_.size() != dims_.count())
    throw Error(ErrorKind::Ingest,
                "field has " + std::to_string(values_.size()) +
                    " values but dims require " + std::to_string(dims_.count()));
  T lo = values_.front();
  T hi = values_.front();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const T v = values_[i];
    if (!std::isfinite(v))
      throw Error(ErrorKind::Ingest,
                  "non-finite value at element offset " + std::to_string(i));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  vmin_ = lo;
  vmax_ = hi;
}

template <std::floating_point T>
Field<T> ingest(std::span<const std::uint8_t> bytes, const Dims& dims) {
  if (bytes.size() != dims.count() * sizeof(T))
    throw Error(ErrorKind::Ingest,
                "input has " + std::to_string(bytes.size()) + " bytes, expected " +
                    std::to_string(dims.count() * sizeof(T)));
  std::vector<T> values(dims.count());
  std::memcpy(values.data(), bytes.data(), bytes.size());
  return Field<T>(dims, std::move(values));
}

template <std::floating_point T>
std::vector<std::uint8_t> to_bytes(const Field<T>& field) {
  auto values = field.values();
  std::vector<std::uint8_t> out(values.size_bytes());
  std::memcpy(out.data(), values.data(), out.size());
  return out;
}

template class Field<float>;
template class Field<double>;
template Field<float> ingest<float>(std::span<const std::uint8_t>, const Dims&);
template Field<double> ingest<double>(std::span<const std::uint8_t>, const Dims&);
template std::vector<std::uint8_t> to_bytes(const Field<float>&);
template std::vector<std::uint8_t> to_bytes(const Field<double>&);

}  // namespace lzebc
