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

#include "lzebc/compressibility.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>

#include "lzebc/parallel.hpp"

namespace lzebc {

std::string_view to_string(VarianceKind kind) {
  return kind == VarianceKind::Absolute ? "absolute" : "binary";
}

std::string_view to_string(Workflow w) {
  switch (w) {
    case Workflow::Huffman: return "huffman";
    case Workflow::Rle: return "rle";
    case Workflow::RleVle: return "rlevle";
  }
  return "unknown";
}

std::uint64_t default_sample_count(std::uint64_t count, std::uint32_t max_distance) {
  const std::uint64_t dmax = max_distance;
  return std::max(10 * dmax, std::min(count / 10, 100 * dmax));
}

namespace {

constexpr std::size_t kSampleBlocks = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n); mt19937_64 output is fully specified, so this
// is reproducible across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t reject_below = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= reject_below) return x % n;
  }
}

template <class V>
MadogramReport sample_impl(std::span<const V> values, const MadogramOptions& opt) {
  const std::uint64_t n = values.size();
  if (n < 2) throw Error(ErrorKind::Data, "madogram needs at least 2 elements");
  if (opt.max_distance == 0)
    throw Error(ErrorKind::Usage, "madogram max distance must be >= 1");

  MadogramReport rep;
  rep.kind = opt.kind;
  rep.max_distance = opt.max_distance;
  rep.samples = opt.samples != 0 ? opt.samples
                                 : default_sample_count(n, opt.max_distance);
  rep.seed = opt.seed;

  // Distances beyond n - 1 admit no pair and are never drawn.
  const std::uint64_t dmax = std::min<std::uint64_t>(opt.max_distance, n - 1);

  struct Partial {
    std::vector<double> sums;
    std::vector<std::uint64_t> counts;
  };
  std::vector<Partial> partial(kSampleBlocks);
  parallel_for(kSampleBlocks, opt.threads, [&](std::size_t b) {
    auto& p = partial[b];
    p.sums.assign(opt.max_distance, 0.0);
    p.counts.assign(opt.max_distance, 0);
    std::uint64_t quota = rep.samples / kSampleBlocks;
    if (b < rep.samples % kSampleBlocks) ++quota;
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(b + 1)));
    for (std::uint64_t k = 0; k < quota; ++k) {
      std::uint64_t a, d;
      do {
        a = uniform_below(rng, n);
        d = 1 + uniform_below(rng, dmax);
      } while (a + d >= n);
      const V u = values[a];
      const V w = values[a + d];
      double v;
      if (opt.kind == VarianceKind::Binary) {
        v = u != w ? 1.0 : 0.0;
      } else {
        v = std::abs(static_cast<double>(u) - static_cast<double>(w));
      }
      p.sums[d - 1] += v;
      ++p.counts[d - 1];
    }
  });

  std::vector<double> sums(opt.max_distance, 0.0);
  rep.counts.assign(opt.max_distance, 0);
  for (const auto& p : partial)
    for (std::size_t d = 0; d < opt.max_distance; ++d) {
      sums[d] += p.sums[d];
      rep.counts[d] += p.counts[d];
    }

  rep.variance.assign(opt.max_distance, 0.0);
  double acc = 0;
  std::size_t measured = 0;
  for (std::size_t d = 0; d < opt.max_distance; ++d) {
    if (rep.counts[d] == 0) continue;
    rep.variance[d] = sums[d] / static_cast<double>(rep.counts[d]);
    acc += rep.variance[d];
    ++measured;
  }
  rep.roughness = measured > 0 ? acc / static_cast<double>(measured) : 0.0;
  if (opt.kind == VarianceKind::Binary) rep.smoothness = 1.0 - rep.roughness;
  return rep;
}

}  // namespace

MadogramReport sample_madogram(std::span<const std::int64_t> values,
                               const MadogramOptions& opt) {
  return sample_impl(values, opt);
}

MadogramReport sample_madogram(std::span<const std::uint32_t> values,
                               const MadogramOptions& opt) {
  return sample_impl(values, opt);
}

WorkflowDecision select_workflow(const Histogram& hist, const SelectOptions& opt) {
  WorkflowDecision dec;
  dec.basis = opt.mode;
  dec.threshold = opt.threshold;
  if (opt.mode == SelectMode::Exact) {
    dec.b_estimate = avg_bitlength(hist, build_codebook(hist));
  } else {
    const auto rep = entropy_report(hist);
    switch (opt.point) {
      case EstimatePoint::Lower: dec.b_estimate = rep.b_lo; break;
      case EstimatePoint::Midpoint: dec.b_estimate = (rep.b_lo + rep.b_hi) / 2; break;
      case EstimatePoint::Upper: dec.b_estimate = rep.b_hi; break;
    }
  }
  dec.chosen = dec.b_estimate <= opt.threshold ? Workflow::RleVle : Workflow::Huffman;
  return dec;
}

template <std::floating_point T>
Analysis analyze(const Field<T>& field, const AnalyzeOptions& opt) {
  Analysis out;
  out.eb_abs = opt.eb.absolute(field.vmin(), field.vmax());
  const QuantConfig cfg{
      opt.cap, quantization_bound<T>(out.eb_abs, field.vmin(), field.vmax())};
  const ChunkSpec spec = opt.chunk.value_or(ChunkSpec::defaults(field.dims().ndim));

  const auto prequant = prequantize(field, cfg, opt.threads);
  const auto quantized = construct(prequant, spec, cfg, opt.threads);
  const auto stream = flatten_chunk_major<std::uint32_t>(
      quantized.quant.codes, quantized.quant.dims,
      partition(quantized.quant.dims, spec));

  if (field.dims().count() >= 2) {
    MadogramOptions mo;
    mo.samples = opt.samples;
    mo.max_distance = opt.max_distance;
    mo.seed = opt.seed;
    mo.threads = opt.threads;
    for (auto kind : {VarianceKind::Absolute, VarianceKind::Binary}) {
      mo.kind = kind;
      out.series.push_back({"prequant", sample_madogram(prequant.codes, mo)});
      out.series.push_back(
          {"quant", sample_madogram(std::span<const std::uint32_t>(quantized.quant.codes), mo)});
    }
    out.prequant_smoothness = *out.series[2].report.smoothness;
    out.quant_smoothness = *out.series[3].report.smoothness;
  } else {
    out.prequant_smoothness = out.quant_smoothness = 1.0;
  }

  const auto hist = histogram(stream, cfg.cap, opt.threads);
  out.entropy = entropy_report(hist, build_codebook(hist));
  out.decision = select_workflow(hist, opt.select);
  return out;
}

template Analysis analyze(const Field<float>&, const AnalyzeOptions&);
template Analysis analyze(const Field<double>&, const AnalyzeOptions&);

void write_csv(std::ostream& out, const Analysis& a) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(10);
  out << "stage,kind,distance,variance\n";
  for (const auto& s : a.series)
    for (std::size_t d = 0; d < s.report.variance.size(); ++d) {
      if (s.report.counts[d] == 0) continue;
      out << s.stage << ',' << to_string(s.report.kind) << ',' << d + 1 << ','
          << s.report.variance[d] << '\n';
    }
  out << "\nkey,value\n";
  out << "eb_abs," << a.eb_abs << '\n';
  out << "H," << a.entropy.H << '\n';
  out << "p1," << a.entropy.p1 << '\n';
  out << "r_minus," << a.entropy.r_minus << '\n';
  out << "r_plus," << a.entropy.r_plus << '\n';
  out << "b_lo," << a.entropy.b_lo << '\n';
  out << "b_hi," << a.entropy.b_hi << '\n';
  out << "b_exact," << a.entropy.b_exact.value_or(0.0) << '\n';
  out << "prequant_smoothness," << a.prequant_smoothness << '\n';
  out << "quant_smoothness," << a.quant_smoothness << '\n';
  out << "smoothness," << a.quant_smoothness << '\n';
  out << "b_estimate," << a.decision.b_estimate << '\n';
  out << "threshold," << a.decision.threshold << '\n';
  out << "decision," << to_string(a.decision.chosen) << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace lzebc
