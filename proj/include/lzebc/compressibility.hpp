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

#ifndef LZEBC_COMPRESSIBILITY_HPP_
#define LZEBC_COMPRESSIBILITY_HPP_

#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lzebc/codebook.hpp"
#include "lzebc/grid.hpp"
#include "lzebc/quantizer.hpp"

namespace lzebc {

enum class VarianceKind { Absolute, Binary };

std::string_view to_string(VarianceKind kind);

struct MadogramOptions {
  VarianceKind kind = VarianceKind::Binary;
  std::uint64_t samples = 0;  // 0: default_sample_count
  std::uint32_t max_distance = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Empirical madogram over the flat sequence. variance[d - 1] is the mean
/// absolute (or binary) difference of the pairs sampled at distance d;
/// distances that drew no pair keep count 0 and are left out of roughness.
struct MadogramReport {
  VarianceKind kind = VarianceKind::Binary;
  std::uint32_t max_distance = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> variance;
  std::vector<std::uint64_t> counts;
  double roughness = 0;              // mean of v(d) over measured distances
  std::optional<double> smoothness;  // 1 - roughness, binary kind only

  friend bool operator==(const MadogramReport&, const MadogramReport&) = default;
};

/// max(10 * Dmax, min(count / 10, 100 * Dmax)).
std::uint64_t default_sample_count(std::uint64_t count, std::uint32_t max_distance);

/// Samples pairs (a, a + d) with a uniform over the sequence and d uniform
/// in [1, Dmax]; pairs falling off the end are redrawn. Deterministic for a
/// given seed regardless of thread count.
MadogramReport sample_madogram(std::span<const std::int64_t> values,
                               const MadogramOptions& opt);
MadogramReport sample_madogram(std::span<const std::uint32_t> values,
                               const MadogramOptions& opt);

enum class Workflow : std::uint8_t { Huffman = 0, Rle = 1, RleVle = 2 };

std::string_view to_string(Workflow w);

enum class SelectMode { Exact, Estimate };
enum class EstimatePoint { Lower, Midpoint, Upper };

inline constexpr double kRleThreshold = 1.09;

struct SelectOptions {
  SelectMode mode = SelectMode::Exact;
  EstimatePoint point = EstimatePoint::Midpoint;
  double threshold = kRleThreshold;
};

struct WorkflowDecision {
  Workflow chosen = Workflow::Huffman;
  double b_estimate = 0;
  SelectMode basis = SelectMode::Exact;
  double threshold = kRleThreshold;
};

/// RleVle when the Huffman average bit-length is at most the threshold,
/// otherwise Huffman. Exact mode builds the codebook; estimate mode uses the
/// [H + R-, H + R+] bracket.
WorkflowDecision select_workflow(const Histogram& hist,
                                 const SelectOptions& opt = {});

struct AnalyzeOptions {
  ErrorBound eb;
  std::uint32_t cap = 1024;
  std::optional<ChunkSpec> chunk;
  std::uint64_t samples = 0;
  std::uint32_t max_distance = 200;
  std::uint64_t seed = 0;
  SelectOptions select;
  unsigned threads = 0;
};

struct MadogramSeries {
  std::string stage;  // "prequant" or "quant"
  MadogramReport report;
};

struct Analysis {
  double eb_abs = 0;
  std::vector<MadogramSeries> series;
  EntropyReport entropy;
  WorkflowDecision decision;
  double prequant_smoothness = 0;
  double quant_smoothness = 0;
};

/// Madograms (absolute and binary) of the prequantized data and of the
/// chunk-major quant-code stream, plus histogram statistics and the
/// workflow the selector would pick.
template <std::floating_point T>
Analysis analyze(const Field<T>& field, const AnalyzeOptions& opt);

/// stage,kind,distance,variance rows, a blank line, then key,value summary.
void write_csv(std::ostream& out, const Analysis& analysis);

}  // namespace lzebc

#endif  // LZEBC_COMPRESSIBILITY_HPP_
