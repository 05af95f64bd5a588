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

#ifndef LZEBC_CODEBOOK_HPP_
#define LZEBC_CODEBOOK_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lzebc/quantizer.hpp"

namespace lzebc {

struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t used() const;
  std::uint64_t max_count() const;
};

/// Counts of each code in [0, cap). Throws ErrorKind::Data on a code >= cap.
Histogram histogram(std::span<const std::uint32_t> codes, std::uint32_t cap,
                    unsigned threads = 1);
Histogram histogram(const QuantGrid& quant, const QuantConfig& cfg,
                    unsigned threads = 1);
Histogram histogram_from_counts(std::vector<std::uint64_t> counts);

/// Shannon entropy in bits/symbol. Throws ErrorKind::Data when empty.
double entropy(const Histogram& hist);

/// H(p, 1 - p).
double binary_entropy(double p);

/// Probability of the most likely symbol.
double most_likely_probability(const Histogram& hist);

struct RedundancyBounds {
  double r_minus = 0;
  double r_plus = 0;
};

/// Bracket on Huffman redundancy <b> - H from p1 alone:
/// r_plus = p1 + 0.086; r_minus = 1 - H(p1, 1 - p1) when p1 > 0.4, else 0.
RedundancyBounds redundancy_bounds(double p1);

/// Canonical prefix code. Codewords are assigned in (length, symbol) order
/// and are fully determined by the lengths.
struct Codebook {
  std::vector<std::uint8_t> lengths;  // 0 = symbol unused
  std::vector<std::uint64_t> codes;   // right-aligned codeword bits

  std::size_t size() const { return lengths.size(); }
  unsigned max_length() const;

  /// Rebuilds canonical codes from serialized lengths. Throws
  /// ErrorKind::Corruption unless the lengths describe a complete prefix
  /// code (or the one-symbol, one-bit code).
  static Codebook from_lengths(std::vector<std::uint8_t> lengths);
};

inline constexpr unsigned kMaxCodeLength = 64;

/// Huffman code lengths with deterministic merging, then canonicalized.
/// Ties go to the lower symbol index, leaves before internal nodes, and
/// earlier-created internal nodes first. A lone symbol gets a 1-bit code.
Codebook build_codebook(const Histogram& hist);

/// Exact number of encoded bits, sum of count * length.
std::uint64_t encoded_bits(const Histogram& hist, const Codebook& book);

/// Average codeword length in bits/symbol.
double avg_bitlength(const Histogram& hist, const Codebook& book);

struct EntropyReport {
  double H = 0;
  double p1 = 0;
  double r_minus = 0;
  double r_plus = 0;
  double b_lo = 0;  // H + r_minus
  double b_hi = 0;  // H + r_plus
  std::optional<double> b_exact;
};

EntropyReport entropy_report(const Histogram& hist);
EntropyReport entropy_report(const Histogram& hist, const Codebook& book);

}  // namespace lzebc

#endif  // LZEBC_CODEBOOK_HPP_
