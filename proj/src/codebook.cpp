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

#include "lzebc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "lzebc/parallel.hpp"

namespace lzebc {

std::size_t Histogram::used() const {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

std::uint64_t Histogram::max_count() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

Histogram histogram(std::span<const std::uint32_t> codes, std::uint32_t cap,
                    unsigned threads) {
  // Per-block partial counts merged by addition.
  constexpr std::size_t kBlock = 1 << 18;
  const std::size_t blocks = (codes.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<std::uint64_t>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    auto& local = partial[b];
    local.assign(cap, 0);
    const std::size_t end = std::min(codes.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      if (codes[i] >= cap)
        throw Error(ErrorKind::Data, "quant-code " + std::to_string(codes[i]) +
                                         " outside dictionary of size " +
                                         std::to_string(cap));
      ++local[codes[i]];
    }
  });

  Histogram h{std::vector<std::uint64_t>(cap, 0), codes.size()};
  for (const auto& local : partial)
    for (std::uint32_t s = 0; s < cap; ++s) h.counts[s] += local[s];
  return h;
}

Histogram histogram(const QuantGrid& quant, const QuantConfig& cfg,
                    unsigned threads) {
  return histogram(quant.codes, cfg.cap, threads);
}

Histogram histogram_from_counts(std::vector<std::uint64_t> counts) {
  const std::uint64_t total =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return {std::move(counts), total};
}

namespace {

void require_nonempty(const Histogram& hist) {
  if (hist.total == 0) throw Error(ErrorKind::Data, "histogram is empty");
}

}  // namespace

double entropy(const Histogram& hist) {
  require_nonempty(hist);
  const double n = static_cast<double>(hist.total);
  double h = 0;
  for (auto c : hist.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double most_likely_probability(const Histogram& hist) {
  require_nonempty(hist);
  return static_cast<double>(hist.max_count()) / static_cast<double>(hist.total);
}

RedundancyBounds redundancy_bounds(double p1) {
  return {p1 > 0.4 ? 1 - binary_entropy(p1) : 0.0, p1 + 0.086};
}

unsigned Codebook::max_length() const {
  return lengths.empty() ? 0 : *std::max_element(lengths.begin(), lengths.end());
}

Codebook Codebook::from_lengths(std::vector<std::uint8_t> lengths) {
  std::vector<std::uint32_t> order;
  // Kraft sum scaled by 2^64: a complete code wraps to exactly zero once.
  std::uint64_t kraft = 0;
  unsigned carries = 0;
  for (std::uint32_t s = 0; s < lengths.size(); ++s) {
    if (lengths[s] == 0) continue;
    if (lengths[s] > kMaxCodeLength)
      throw Error(ErrorKind::Corruption, "code length exceeds 64 bits");
    carries += __builtin_add_overflow(kraft, std::uint64_t{1} << (kMaxCodeLength - lengths[s]),
                                      &kraft);
    order.push_back(s);
  }
  const bool lone = order.size() == 1 && lengths[order[0]] == 1;
  if (order.empty() || (!(carries == 1 && kraft == 0) && !lone))
    throw Error(ErrorKind::Corruption, "code lengths do not form a complete prefix code");

  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return lengths[a] < lengths[b];
  });

  Codebook book{std::move(lengths), {}};
  book.codes.assign(book.lengths.size(), 0);
  std::uint64_t code = 0;
  unsigned prev = book.lengths[order.front()];
  for (auto s : order) {
    const unsigned len = book.lengths[s];
    code <<= (len - prev);
    prev = len;
    book.codes[s] = code++;
  }
  return book;
}

Codebook build_codebook(const Histogram& hist) {
  require_nonempty(hist);
  const auto cap = static_cast<std::uint32_t>(hist.counts.size());

  struct Node {
    std::uint64_t freq;
    std::uint64_t order;  // symbol for leaves, cap + k for the k-th merge
    std::size_t id;
  };
  auto later = [](const Node& a, const Node& b) {
    return std::tie(a.freq, a.order) > std::tie(b.freq, b.order);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> heap(later);

  std::vector<std::uint32_t> symbol_of;  // leaf id -> symbol
  for (std::uint32_t s = 0; s < cap; ++s)
    if (hist.counts[s] > 0) {
      heap.push({hist.counts[s], s, symbol_of.size()});
      symbol_of.push_back(s);
    }

  std::vector<std::uint8_t> lengths(cap, 0);
  if (symbol_of.size() == 1) {
    lengths[symbol_of[0]] = 1;
    return Codebook::from_lengths(std::move(lengths));
  }

  std::vector<std::size_t> parent(symbol_of.size(), 0);
  std::uint64_t merges = 0;
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    const std::size_t id = parent.size();
    parent.push_back(0);
    parent[a.id] = id;
    parent[b.id] = id;
    heap.push({a.freq + b.freq, cap + merges++, id});
  }

  // Children are always created before their parent, so one reverse sweep
  // assigns every depth.
  const std::size_t root = parent.size() - 1;
  std::vector<unsigned> depth(parent.size(), 0);
  for (std::size_t id = root; id-- > 0;) depth[id] = depth[parent[id]] + 1;

  for (std::size_t leaf = 0; leaf < symbol_of.size(); ++leaf) {
    if (depth[leaf] > kMaxCodeLength)
      throw Error(ErrorKind::Data, "Huffman code length exceeds 64 bits");
    lengths[symbol_of[leaf]] = static_cast<std::uint8_t>(depth[leaf]);
  }
  return Codebook::from_lengths(std::move(lengths));
}

std::uint64_t encoded_bits(const Histogram& hist, const Codebook& book) {
  std::uint64_t bits = 0;
  for (std::size_t s = 0; s < hist.counts.size(); ++s) {
    if (hist.counts[s] == 0) continue;
    if (s >= book.size() || book.lengths[s] == 0)
      throw Error(ErrorKind::Data,
                  "symbol " + std::to_string(s) + " has no codeword");
    bits += hist.counts[s] * book.lengths[s];
  }
  return bits;
}

double avg_bitlength(const Histogram& hist, const Codebook& book) {
  require_nonempty(hist);
  return static_cast<double>(encoded_bits(hist, book)) /
         static_cast<double>(hist.total);
}

EntropyReport entropy_report(const Histogram& hist) {
  EntropyReport r;
  r.H = entropy(hist);
  r.p1 = most_likely_probability(hist);
  const auto bounds = redundancy_bounds(r.p1);
  r.r_minus = bounds.r_minus;
  r.r_plus = bounds.r_plus;
  r.b_lo = r.H + r.r_minus;
  r.b_hi = r.H + r.r_plus;
  return r;
}

EntropyReport entropy_report(const Histogram& hist, const Codebook& book) {
  EntropyReport r = entropy_report(hist);
  r.b_exact = avg_bitlength(hist, book);
  return r;
}

}  // namespace lzebc
