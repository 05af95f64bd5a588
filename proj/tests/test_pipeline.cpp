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

#include <cmath>
#include <cstring>

#include "doctest.h"
#include "generators.hpp"
#include "lzebc/archive.hpp"
#include "lzebc/error.hpp"
#include "lzebc/pipeline.hpp"
#include "lzebc/psum.hpp"

using namespace lzebc;

namespace {

template <class T>
double max_err(const Field<T>& a, const Field<T>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a.values()[i]) - b.values()[i]));
  return m;
}

CompressOptions options(ErrorBound eb, WorkflowChoice w = WorkflowChoice::Auto) {
  CompressOptions o;
  o.eb = eb;
  o.workflow = w;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("round trip respects the bound for every shape and type") {
  gen::Rng rng(91);
  for (int t = 0; t < 120; ++t) {
    const Dims d = gen::random_dims(rng, 3000, 70, 20);
    const auto shape = gen::random_shape(rng);
    const double scale = std::pow(10.0, rng.uniform(-4, 5));
    const double rel = std::pow(10.0, -static_cast<double>(1 + rng.below(5)));
    const auto w = static_cast<WorkflowChoice>(rng.below(4));
    if (rng.coin()) {
      const Field<float> f(d, gen::field_values<float>(rng, d, shape, scale));
      const ErrorBound eb = f.range() > 0 ? ErrorBound{EbMode::Rel, rel}
                                          : ErrorBound{EbMode::Abs, rel * scale};
      const auto ar = compress(f, options(eb, w));
      const auto back = decompress_as<float>(ar.bytes);
      REQUIRE(back.dims() == d);
      REQUIRE(max_err(f, back) <= ar.eb_abs * (1 + 1e-12));
    } else {
      const Field<double> f(d, gen::field_values<double>(rng, d, shape, scale));
      const ErrorBound eb = f.range() > 0 ? ErrorBound{EbMode::Rel, rel}
                                          : ErrorBound{EbMode::Abs, rel * scale};
      const auto ar = compress(f, options(eb, w));
      const auto back = decompress_as<double>(ar.bytes);
      REQUIRE(max_err(f, back) <= ar.eb_abs * (1 + 1e-12));
    }
  }
}

TEST_CASE("constant field picks rle plus vle and beats the huffman ceiling") {
  const Dims d(64, 64, 64);
  const Field<float> f(d, std::vector<float>(d.count(), 1.0f));
  const auto ar = compress(f, options({EbMode::Abs, 0.01}));
  CHECK(ar.workflow == Workflow::RleVle);
  const double cr = static_cast<double>(d.count() * 4) / static_cast<double>(ar.bytes.size());
  CHECK(cr > 32);
  const auto back = decompress_as<float>(ar.bytes);
  CHECK(max_err(f, back) <= 0.01);
}

TEST_CASE("rel bound on a constant field asks for an absolute bound") {
  const Field<float> f(Dims(10), std::vector<float>(10, 3.0f));
  try {
    compress(f, options({EbMode::Rel, 1e-3}));
    FAIL("expected usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
}

TEST_CASE("white noise picks huffman within the 32x payload ceiling") {
  gen::Rng rng(92);
  const Dims d(128, 128);
  const Field<float> f(d, gen::field_values<float>(rng, d, gen::Shape::Noise, 0.5));
  const auto ar = compress(f, options({EbMode::Rel, 1e-4}));
  CHECK(ar.workflow == Workflow::Huffman);
  CHECK(static_cast<double>(d.count() * 4) / static_cast<double>(ar.payload_bytes) <= 32);
}

TEST_CASE("workflows decode to bitwise identical fields") {
  gen::Rng rng(93);
  for (int t = 0; t < 20; ++t) {
    const Dims d = gen::random_dims(rng, 2000, 60, 16);
    const Field<float> f(d, gen::field_values<float>(rng, d, gen::random_shape(rng), 10));
    const ErrorBound eb = f.range() > 0 ? ErrorBound{EbMode::Rel, 1e-3} : ErrorBound{EbMode::Abs, 0.1};
    std::vector<std::vector<std::uint8_t>> outs;
    std::vector<std::vector<std::uint32_t>> quant;
    for (auto w : {WorkflowChoice::Huffman, WorkflowChoice::Rle, WorkflowChoice::RleVle}) {
      const auto ar = compress(f, options(eb, w));
      outs.push_back(to_bytes(decompress_as<float>(ar.bytes)));
      quant.push_back(decode_archive(ar.bytes).front().quant.codes);
    }
    REQUIRE(outs[0] == outs[1]);
    REQUIRE(outs[0] == outs[2]);
    REQUIRE(quant[0] == quant[1]);
    REQUIRE(quant[0] == quant[2]);
  }
}

TEST_CASE("decoded quant-codes equal the encoder input") {
  gen::Rng rng(94);
  const Dims d(40, 33, 9);
  const Field<double> f(d, gen::field_values<double>(rng, d, gen::Shape::Smooth));
  const double eb_abs = 1e-4 * f.range();
  const QuantConfig cfg{1024, quantization_bound<double>(eb_abs, f.vmin(), f.vmax())};
  const auto q = construct(prequantize(f, cfg), ChunkSpec::defaults(3), cfg);
  const auto ar = compress(f, options({EbMode::Rel, 1e-4}));
  const auto seg = decode_archive(ar.bytes);
  REQUIRE(seg.size() == 1);
  CHECK(seg[0].quant.codes == q.quant.codes);
  CHECK(seg[0].outliers == q.outliers);
}

TEST_CASE("archives are deterministic across thread counts") {
  gen::Rng rng(95);
  const Dims d(50, 40, 30);
  const Field<float> f(d, gen::field_values<float>(rng, d, gen::Shape::Spiky));
  auto o = options({EbMode::Rel, 1e-4});
  std::vector<std::uint8_t> first;
  for (unsigned th : {1u, 2u, 4u, 0u}) {
    o.threads = th;
    const auto ar = compress(f, o);
    if (first.empty()) first = ar.bytes;
    REQUIRE(ar.bytes == first);
  }
}

TEST_CASE("segmented archives stack along the outermost axis") {
  gen::Rng rng(96);
  for (const Dims d : {Dims(5000), Dims(30, 100), Dims(12, 10, 37)}) {
    const Field<float> f(d, gen::field_values<float>(rng, d, gen::Shape::Smooth));
    auto o = options({EbMode::Rel, 1e-3});
    o.segment_bytes = 4096;
    const auto ar = compress(f, o);
    CHECK(ar.segments > 1);
    const auto back = decompress_as<float>(ar.bytes);
    CHECK(back.dims() == d);
    CHECK(max_err(f, back) <= ar.eb_abs * (1 + 1e-12));
    // The bound comes from the whole field, so every segment agrees.
    for (const auto& seg : parse_archive(ar.bytes)) {
      CHECK(seg.header.vmin == f.vmin());
      CHECK(seg.header.vmax == f.vmax());
    }
  }
}

TEST_CASE("custom chunks and caps round trip") {
  gen::Rng rng(97);
  const Dims d(31, 29, 7);
  const Field<double> f(d, gen::field_values<double>(rng, d, gen::Shape::Noise));
  auto o = options({EbMode::Rel, 1e-5});
  o.chunk = ChunkSpec{5, 3, 7};
  o.cap = 64;
  const auto ar = compress(f, o);
  CHECK(ar.outliers > 0);
  CHECK(max_err(f, decompress_as<double>(ar.bytes)) <= ar.eb_abs * (1 + 1e-12));
  o.cap = 100;
  CHECK_THROWS_AS(compress(f, o), Error);
  o.cap = 1u << 25;
  CHECK_THROWS_AS(compress(f, o), Error);
}

TEST_CASE("tiny bounds overflow loudly") {
  const Field<double> f(Dims(3), {0.0, 1e10, -1e10});
  for (double eb : {1e-12, 1e-7}) {
    try {
      compress(f, options({EbMode::Abs, eb}));
      FAIL("expected overflow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Overflow);
      CHECK(std::string(e.what()).find("larger bound") != std::string::npos);
    }
  }
}

TEST_CASE("decompress reports the archive scalar type") {
  const Field<double> f(Dims(8), {0, 1, 2, 3, 4, 5, 6, 7});
  const auto ar = compress(f, options({EbMode::Abs, 0.5}));
  CHECK(std::holds_alternative<Field<double>>(decompress(ar.bytes)));
  try {
    decompress_as<float>(ar.bytes);
    FAIL("expected usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
}

TEST_CASE("stats examples") {
  const Field<float> a(Dims(4), {0, 1, 2, 4});
  const auto same = stats(a, a, 0);
  CHECK(same.max_abs_err == 0);
  CHECK(std::isinf(same.psnr));
  CHECK_FALSE(same.compression_ratio);
  CHECK(format_stats(same).find("psnr=inf") != std::string::npos);

  const Field<float> b(Dims(4), {0, 1, 2, 5});
  const auto s = stats(a, b, 8);
  CHECK(s.max_abs_err == 1);
  CHECK(s.rmse == doctest::Approx(0.5));
  CHECK(s.psnr == doctest::Approx(20 * std::log10(4 / 0.5)));
  CHECK(*s.compression_ratio == doctest::Approx(2.0));
  CHECK(format_stats(s).rfind("cr=2 ", 0) == 0);

  const Field<float> c(Dims(2, 2), {0, 1, 2, 4});
  CHECK_THROWS_AS(stats(a, c, 0), Error);

  // 4 MB squeezed to 0.5 MB.
  const Field<float> big(Dims(1 << 20), std::vector<float>(1 << 20, 0.f));
  CHECK(*stats(big, big, 1 << 19).compression_ratio == doctest::Approx(8.0));
}

TEST_CASE("rel 1e-4 gives at least 80 dB") {
  gen::Rng rng(98);
  for (int t = 0; t < 30; ++t) {
    const Dims d = gen::random_dims(rng, 4000, 64, 16);
    const Field<float> f(d, gen::field_values<float>(rng, d, gen::Shape::Noise, 100));
    if (!(f.range() > 0)) continue;
    const auto ar = compress(f, options({EbMode::Rel, 1e-4}));
    const auto s = stats(f, decompress_as<float>(ar.bytes), ar.bytes.size());
    REQUIRE(s.psnr >= 80);
  }
}
