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

#include <cstring>
#include <limits>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "lzebc/error.hpp"
#include "lzebc/grid.hpp"

using namespace lzebc;

namespace {

template <class T>
std::vector<std::uint8_t> raw(const std::vector<T>& v) {
  std::vector<std::uint8_t> out(v.size() * sizeof(T));
  std::memcpy(out.data(), v.data(), out.size());
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("dims arity sets ndim and unused axes") {
  Dims a(7);
  CHECK(a.ndim == 1);
  CHECK(a.ny == 1);
  CHECK(a.nz == 1);
  Dims b(4, 3);
  CHECK(b.ndim == 2);
  CHECK(b.nz == 1);
  CHECK(b.count() == 12);
  Dims c(2, 3, 4);
  CHECK(c.ndim == 3);
  CHECK(c.count() == 24);
}

TEST_CASE("dims reject zero extents and overflow") {
  CHECK_THROWS_AS(Dims(0), Error);
  CHECK_THROWS_AS(Dims(3, 0, 2), Error);
  const std::size_t big = std::size_t{1} << 32;
  CHECK_THROWS_AS(Dims(big, big, 2), Error);
  std::vector<std::size_t> four{1, 1, 1, 1};
  CHECK_THROWS_AS(Dims::from_extents(four), Error);
}

TEST_CASE("linear_index examples") {
  CHECK(linear_index(Dims(4, 3), 0, 0, 0) == 0);
  CHECK(linear_index(Dims(4, 3), 1, 2, 0) == 9);
  CHECK(linear_index(Dims(2, 2, 2), 1, 1, 1) == 7);
  CHECK(kind_of([] { linear_index(Dims(4, 3), 4, 0, 0); }) == ErrorKind::Address);
  CHECK(kind_of([] { linear_index(Dims(4, 3), 0, 3, 0); }) == ErrorKind::Address);
}

TEST_CASE("linear_index is a bijection onto [0, count)") {
  gen::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Dims d = gen::random_dims(rng, 64, 12, 6);
    std::vector<bool> seen(d.count(), false);
    for (std::size_t z = 0; z < d.nz; ++z)
      for (std::size_t y = 0; y < d.ny; ++y)
        for (std::size_t x = 0; x < d.nx; ++x) {
          const auto i = linear_index(d, x, y, z);
          REQUIRE(i < d.count());
          REQUIRE_FALSE(seen[i]);
          seen[i] = true;
        }
  }
}

TEST_CASE("partition examples") {
  auto one = partition(Dims(256), {256, 1, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0].extent == std::array<std::size_t, 3>{256, 1, 1});

  auto two = partition(Dims(300), {256, 1, 1});
  REQUIRE(two.size() == 2);
  CHECK(two[0].extent[0] == 256);
  CHECK(two[1].extent[0] == 44);
  CHECK(two[1].origin[0] == 256);

  auto four = partition(Dims(17, 17), {16, 16, 1});
  REQUIRE(four.size() == 4);
  CHECK(four[0].extent == std::array<std::size_t, 3>{16, 16, 1});
  CHECK(four[1].extent == std::array<std::size_t, 3>{1, 16, 1});
  CHECK(four[2].extent == std::array<std::size_t, 3>{16, 1, 1});
  CHECK(four[3].extent == std::array<std::size_t, 3>{1, 1, 1});
  for (std::size_t i = 0; i < four.size(); ++i) CHECK(four[i].index == i);
}

TEST_CASE("default chunk edges") {
  CHECK(ChunkSpec::defaults(1) == ChunkSpec{256, 1, 1});
  CHECK(ChunkSpec::defaults(2) == ChunkSpec{16, 16, 1});
  CHECK(ChunkSpec::defaults(3) == ChunkSpec{8, 8, 8});
  CHECK_THROWS_AS(partition(Dims(4), {0, 1, 1}), Error);
}

TEST_CASE("partition tiles every element exactly once") {
  gen::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const Dims d = gen::random_dims(rng, 600, 40, 20);
    const ChunkSpec spec{1 + rng.below(20), 1 + rng.below(20), 1 + rng.below(20)};
    const auto chunks = partition(d, spec);
    std::vector<int> hits(d.count(), 0);
    for (const auto& c : chunks) {
      for (int a = 0; a < 3; ++a) {
        REQUIRE(c.extent[a] >= 1);
        REQUIRE(c.extent[a] <= spec.edge(a));
        REQUIRE(c.origin[a] + c.extent[a] <= d.extent(a));
      }
      for (std::size_t z = 0; z < c.extent[2]; ++z)
        for (std::size_t y = 0; y < c.extent[1]; ++y)
          for (std::size_t x = 0; x < c.extent[0]; ++x)
            ++hits[linear_index(d, c.origin[0] + x, c.origin[1] + y, c.origin[2] + z)];
    }
    for (int h : hits) REQUIRE(h == 1);

    // Chunk-major flatten then scatter is the identity.
    std::vector<std::uint32_t> grid(d.count());
    for (auto& g : grid) g = static_cast<std::uint32_t>(rng.below(1000));
    const auto stream = flatten_chunk_major<std::uint32_t>(grid, d, chunks);
    REQUIRE(scatter_chunk_major<std::uint32_t>(stream, d, chunks) == grid);
  }
}

TEST_CASE("chunk ordinals run x-chunks fastest") {
  const auto chunks = partition(Dims(10, 10, 10), {4, 4, 4});
  REQUIRE(chunks.size() == 27);
  CHECK(chunks[1].origin == std::array<std::size_t, 3>{4, 0, 0});
  CHECK(chunks[3].origin == std::array<std::size_t, 3>{0, 4, 0});
  CHECK(chunks[9].origin == std::array<std::size_t, 3>{0, 0, 4});
}

TEST_CASE("ingest examples") {
  const auto f = ingest<float>(raw<float>({1.0f, 2.0f}), Dims(2));
  CHECK(f.vmin() == 1.0);
  CHECK(f.vmax() == 2.0);
  CHECK(f.values()[1] == 2.0f);

  std::vector<std::uint8_t> twelve(12, 0);
  CHECK(kind_of([&] { ingest<float>(twelve, Dims(2)); }) == ErrorKind::Ingest);

  const float nan = std::numeric_limits<float>::quiet_NaN();
  try {
    ingest<float>(raw<float>({0.f, 1.f, nan}), Dims(3));
    FAIL("expected ingest error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Ingest);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { ingest<double>(raw<double>({inf}), Dims(1)); }) == ErrorKind::Ingest);
}

TEST_CASE("to_bytes inverts ingest") {
  gen::Rng rng(13);
  const Dims d(5, 7);
  const auto vals = gen::field_values<double>(rng, d, gen::Shape::Noise);
  const auto bytes = raw(vals);
  const auto f = ingest<double>(bytes, d);
  CHECK(to_bytes(f) == bytes);
}
