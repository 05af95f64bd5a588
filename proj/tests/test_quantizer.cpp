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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "lzebc/error.hpp"
#include "lzebc/psum.hpp"
#include "lzebc/quantizer.hpp"

using namespace lzebc;

namespace {

PrequantGrid grid_of(Dims d, std::vector<std::int64_t> v) { return {d, std::move(v)}; }

Quantized construct_whole(const PrequantGrid& p, std::uint32_t cap = 1024) {
  const QuantConfig cfg{cap, 0.01};
  ChunkSpec spec{p.dims.nx, p.dims.ny, p.dims.nz};
  return construct(p, spec, cfg);
}

}  // namespace

TEST_CASE("quant config validation") {
  CHECK_NOTHROW(QuantConfig{1024, 0.1}.validate());
  CHECK_NOTHROW(QuantConfig{4, 0.1}.validate());
  CHECK_THROWS_AS((QuantConfig{2, 0.1}.validate()), Error);
  CHECK_THROWS_AS((QuantConfig{1000, 0.1}.validate()), Error);
  CHECK_THROWS_AS((QuantConfig{1024, 0}.validate()), Error);
  CHECK_THROWS_AS((QuantConfig{1024, INFINITY}.validate()), Error);
  CHECK(QuantConfig{1024, 1}.radius() == 512);
}

TEST_CASE("error bound conversion") {
  CHECK(ErrorBound{EbMode::Abs, 0.5}.absolute(3, 3) == 0.5);
  CHECK(ErrorBound{EbMode::Rel, 1e-2}.absolute(-1, 3) == doctest::Approx(0.04));
  try {
    ErrorBound{EbMode::Rel, 1e-2}.absolute(2, 2);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
    CHECK(std::string(e.what()).find("absolute") != std::string::npos);
  }
}

TEST_CASE("prequantize examples") {
  CHECK(prequantize_value(1.0, 0.01) == 50);
  CHECK(prequantize_value(0.029, 0.01) == 1);
  CHECK(prequantize_value(-0.03, 0.01) == -2);
  CHECK(prequantize_value(0.03, 0.01) == 2);
  CHECK(prequantize_value(0.0, 0.01) == 0);
}

TEST_CASE("prequantize rejects magnitudes beyond the integer range") {
  try {
    prequantize_value(1e30, 1e-12);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
    CHECK(std::string(e.what()).find("larger bound") != std::string::npos);
  }
}

TEST_CASE("prequantized values stay within the bound") {
  gen::Rng rng(21);
  for (int t = 0; t < 2000; ++t) {
    const double eb = std::pow(10.0, rng.uniform(-6, 1));
    const double d = rng.uniform(-1e3, 1e3) * (rng.coin() ? 1 : 1e-3);
    const auto q = prequantize_value(d, eb);
    REQUIRE(std::abs(d - static_cast<double>(q) * 2 * eb) <= eb * (1 + 1e-12));
  }
}

TEST_CASE("lorenzo predictor") {
  SUBCASE("2D west north northwest") {
    // Local 2x2: value(x=0,y=0)=2 (northwest), (1,0)=4 (north), (0,1)=3 (west).
    std::int64_t g[2][2] = {{2, 4}, {3, 0}};
    auto at = [&](std::size_t x, std::size_t y, std::size_t) { return g[y][x]; };
    CHECK(lorenzo_predict(at, 2, 1, 1, 0) == 5);
  }
  SUBCASE("origin predicts zero") {
    auto at = [](std::size_t, std::size_t, std::size_t) { return std::int64_t{99}; };
    for (int nd = 1; nd <= 3; ++nd) CHECK(lorenzo_predict(at, nd, 0, 0, 0) == 0);
  }
  SUBCASE("3D coefficients sum to one") {
    for (std::int64_t k : {-7, 0, 1, 123456789}) {
      auto at = [&](std::size_t, std::size_t, std::size_t) { return k; };
      CHECK(lorenzo_predict(at, 3, 1, 1, 1) == k);
      CHECK(lorenzo_predict(at, 2, 1, 1, 0) == k);
      CHECK(lorenzo_predict(at, 1, 1, 0, 0) == k);
    }
  }
  SUBCASE("3D matches expanded seven-term formula") {
    gen::Rng rng(22);
    std::int64_t g[2][2][2];
    for (auto& a : g)
      for (auto& b : a)
        for (auto& c : b) c = rng.between(-1000, 1000);
    auto at = [&](std::size_t x, std::size_t y, std::size_t z) { return g[z][y][x]; };
    const std::int64_t expect = g[1][1][0] + g[1][0][1] + g[0][1][1] - g[1][0][0] -
                                g[0][1][0] - g[0][0][1] + g[0][0][0];
    CHECK(lorenzo_predict(at, 3, 1, 1, 1) == expect);
  }
  SUBCASE("neighbors outside the chunk contribute zero") {
    auto at = [](std::size_t, std::size_t, std::size_t) { return std::int64_t{5}; };
    // On the y = 0 face of a 2D chunk only the west neighbor exists.
    CHECK(lorenzo_predict(at, 2, 3, 0, 0) == 5);
    // On the z = 0 face of a 3D chunk the 2D formula remains.
    CHECK(lorenzo_predict(at, 3, 3, 2, 0) == 5);
    // x = 0, y = 0, z > 0: only the below neighbor.
    CHECK(lorenzo_predict(at, 3, 0, 0, 2) == 5);
  }
}

TEST_CASE("construct_chunk examples") {
  SUBCASE("1D constant") {
    const auto r = construct_whole(grid_of(Dims(3), {5, 5, 5}));
    CHECK(r.quant.codes == std::vector<std::uint32_t>{517, 512, 512});
    CHECK(r.outliers.empty());
  }
  SUBCASE("1D outlier") {
    const auto r = construct_whole(grid_of(Dims(1), {600}));
    CHECK(r.quant.codes == std::vector<std::uint32_t>{512});
    REQUIRE(r.outliers.size() == 1);
    CHECK(r.outliers[0] == Outlier{0, 600});
  }
  SUBCASE("2D ones") {
    const auto r = construct_whole(grid_of(Dims(2, 2), {1, 1, 1, 1}));
    CHECK(r.quant.codes == std::vector<std::uint32_t>{513, 512, 512, 512});
    CHECK(r.outliers.empty());
  }
  SUBCASE("in-range test is strict and symmetric") {
    const auto r = construct_whole(grid_of(Dims(4), {511, 0, -511, -1023}));
    CHECK(r.quant.codes == std::vector<std::uint32_t>{1023, 1, 1, 512});
    REQUIRE(r.outliers.size() == 1);
    CHECK(r.outliers[0] == Outlier{3, -512});
    const auto s = construct_whole(grid_of(Dims(2), {512, 0}));
    CHECK(s.quant.codes == std::vector<std::uint32_t>{512, 512});
    CHECK(s.outliers == OutlierList{{0, 512}, {1, -512}});
  }
}

TEST_CASE("oracle examples") {
  const QuantConfig cfg{1024, 0.01};
  const QuantGrid q{Dims(3), {517, 512, 512}};
  const auto chunks = partition(q.dims, {3, 1, 1});
  CHECK(sequential_reconstruct_oracle(q, {}, chunks[0], cfg) ==
        std::vector<std::int64_t>{5, 5, 5});
  const QuantGrid o{Dims(1), {512}};
  CHECK(sequential_reconstruct_oracle(o, {{0, 600}}, partition(o.dims, {1, 1, 1})[0], cfg) ==
        std::vector<std::int64_t>{600});
}

TEST_CASE("construct then oracle is the identity on random grids") {
  gen::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const Dims d = gen::random_dims(rng, 700, 40, 14);
    PrequantGrid p{d, std::vector<std::int64_t>(d.count())};
    const std::int64_t span = std::int64_t{1} << rng.below(20);
    std::int64_t walk = 0;
    for (auto& v : p.codes) {
      walk += rng.between(-span, span);
      v = rng.below(4) == 0 ? rng.between(-span, span) : walk;
    }
    const std::uint32_t cap = std::uint32_t{4} << rng.below(12);
    const QuantConfig cfg{cap, 1.0};
    const ChunkSpec spec{1 + rng.below(12), 1 + rng.below(12), 1 + rng.below(12)};
    const auto qz = construct(p, spec, cfg);

    for (auto c : qz.quant.codes) REQUIRE(c < cap);
    for (std::size_t i = 0; i < qz.outliers.size(); ++i) {
      const auto& o = qz.outliers[i];
      REQUIRE(o.index < d.count());
      REQUIRE(std::abs(o.delta) >= cfg.radius());
      REQUIRE(qz.quant.codes[o.index] == cap / 2);
      if (i > 0) REQUIRE(qz.outliers[i - 1].index < o.index);
    }
    REQUIRE(sequential_reconstruct_oracle(qz.quant, qz.outliers, spec, cfg).codes == p.codes);
  }
}

TEST_CASE("constant chunks have zero deltas except at the origin") {
  gen::Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const Dims d(1 + rng.below(20), 1 + rng.below(20), 1 + rng.below(20));
    const std::int64_t k = rng.between(-200, 200);
    const ChunkSpec spec{8, 8, 8};
    const auto qz =
        construct(grid_of(d, std::vector<std::int64_t>(d.count(), k)), spec, {1024, 1});
    for (const auto& c : partition(d, spec)) {
      const auto view = chunk_span(qz.quant.codes.data(), d, c);
      for (std::size_t z = 0; z < c.extent[2]; ++z)
        for (std::size_t y = 0; y < c.extent[1]; ++y)
          for (std::size_t x = 0; x < c.extent[0]; ++x) {
            const std::uint32_t want = (x | y | z) == 0 ? static_cast<std::uint32_t>(512 + k) : 512;
            REQUIRE(view(x, y, z) == want);
          }
    }
  }
}

TEST_CASE("construct is independent of thread count") {
  gen::Rng rng(25);
  const Dims d(37, 29, 11);
  PrequantGrid p{d, std::vector<std::int64_t>(d.count())};
  for (auto& v : p.codes) v = rng.between(-3000, 3000);
  const auto a = construct(p, {8, 8, 8}, {1024, 1}, 1);
  const auto b = construct(p, {8, 8, 8}, {1024, 1}, 4);
  CHECK(a.quant.codes == b.quant.codes);
  CHECK(a.outliers == b.outliers);
}

TEST_CASE("quantization bound keeps rounded reconstructions within eb") {
  gen::Rng rng(26);
  for (int t = 0; t < 400; ++t) {
    const double scale = std::pow(10.0, rng.uniform(-3, 6));
    const Dims d(257);
    auto vals = gen::field_values<float>(rng, d, gen::random_shape(rng), scale);
    const Field<float> f(d, vals);
    const double rel = std::pow(10.0, -rng.uniform(1, 7));
    const double eb = f.range() > 0 ? rel * f.range() : rel * scale;
    const double bound = quantization_bound<float>(eb, f.vmin(), f.vmax());
    REQUIRE(bound > 0);
    REQUIRE(bound <= eb);
    const QuantConfig cfg{1024, bound};
    const auto p = prequantize(f, cfg);
    const auto back = dequantize<float>(p, cfg);
    for (std::size_t i = 0; i < vals.size(); ++i)
      REQUIRE(std::abs(static_cast<double>(vals[i]) - back.values()[i]) <= eb * (1 + 1e-12));
  }
}

TEST_CASE("quantization bound rejects bounds below float resolution") {
  CHECK_THROWS_AS(quantization_bound<float>(1e-30, 1e6, 2e6), Error);
  CHECK_THROWS_AS(quantization_bound<float>(1e-3, 0, 1e39), Error);
  CHECK(quantization_bound<double>(1e-2, 0, 1) == doctest::Approx(1e-2).epsilon(1e-12));
}
