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

#ifndef LZEBC_RLE_HPP_
#define LZEBC_RLE_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lzebc {

/// Value/length tuples stored as two parallel arrays.
struct RleRuns {
  std::vector<std::uint32_t> values;
  std::vector<std::uint32_t> lengths;

  std::size_t size() const { return values.size(); }
  std::uint64_t total() const;
};

inline constexpr std::uint32_t kMaxRun = std::numeric_limits<std::uint32_t>::max();

/// Maximal runs in order; a run longer than max_run is split.
RleRuns rle_encode(std::span<const std::uint32_t> symbols,
                   std::uint32_t max_run = kMaxRun);

/// Throws ErrorKind::Corruption on a zero-length run or mismatched arrays.
std::vector<std::uint32_t> rle_decode(const RleRuns& runs);

/// ceil(log2 cap).
unsigned code_bits(std::uint32_t cap);

/// Estimated bits/symbol with raw tuples: runs * (ceil(log2 cap) + 32) / n.
/// Throws ErrorKind::Data when the runs cover no symbols.
double rle_bitlength(const RleRuns& runs, std::uint32_t cap);

}  // namespace lzebc

#endif  // LZEBC_RLE_HPP_
