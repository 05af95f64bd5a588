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

#include "lzebc/rle.hpp"

#include <bit>
#include <numeric>

#include "lzebc/error.hpp"

namespace lzebc {

std::uint64_t RleRuns::total() const {
  return std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0});
}

RleRuns rle_encode(std::span<const std::uint32_t> symbols, std::uint32_t max_run) {
  if (max_run == 0) throw Error(ErrorKind::Usage, "max run length must be >= 1");
  RleRuns runs;
  std::size_t i = 0;
  while (i < symbols.size()) {
    const std::uint32_t v = symbols[i];
    std::size_t j = i + 1;
    while (j < symbols.size() && symbols[j] == v && j - i < max_run) ++j;
    runs.values.push_back(v);
    runs.lengths.push_back(static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return runs;
}

std::vector<std::uint32_t> rle_decode(const RleRuns& runs) {
  if (runs.values.size() != runs.lengths.size())
    throw Error(ErrorKind::Corruption, "run values and lengths differ in count");
  std::vector<std::uint32_t> out;
  out.reserve(runs.total());
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (runs.lengths[k] == 0) throw Error(ErrorKind::Corruption, "zero-length run");
    out.insert(out.end(), runs.lengths[k], runs.values[k]);
  }
  return out;
}

unsigned code_bits(std::uint32_t cap) {
  return cap <= 1 ? 0 : static_cast<unsigned>(std::bit_width(cap - 1));
}

double rle_bitlength(const RleRuns& runs, std::uint32_t cap) {
  const std::uint64_t n = runs.total();
  if (n == 0) throw Error(ErrorKind::Data, "no symbols to estimate");
  const double per_tuple = code_bits(cap) + 32.0;
  return static_cast<double>(runs.size()) * per_tuple / static_cast<double>(n);
}

}  // namespace lzebc
