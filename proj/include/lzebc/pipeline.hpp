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

#ifndef LZEBC_PIPELINE_HPP_
#define LZEBC_PIPELINE_HPP_

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lzebc/archive.hpp"
#include "lzebc/compressibility.hpp"
#include "lzebc/grid.hpp"
#include "lzebc/quantizer.hpp"

namespace lzebc {

enum class WorkflowChoice { Auto, Huffman, Rle, RleVle };

struct CompressOptions {
  ErrorBound eb;  // relative 1e-4 by default
  std::uint32_t cap = 1024;
  std::optional<ChunkSpec> chunk;  // per-ndim defaults when empty
  WorkflowChoice workflow = WorkflowChoice::Auto;
  SelectOptions select;
  unsigned threads = 0;  // 0: all cores; output does not depend on it
  // Fields larger than this many raw bytes are split into independent
  // segments along the outermost axis.
  std::uint64_t segment_bytes = std::uint64_t{1} << 30;
};

struct Archive {
  std::vector<std::uint8_t> bytes;
  Workflow workflow = Workflow::Huffman;  // of the first segment
  double eb_abs = 0;
  std::size_t segments = 0;
  std::uint64_t payload_bytes = 0;  // symbol stream sections only
  std::uint64_t outliers = 0;
};

template <std::floating_point T>
Archive compress(const Field<T>& field, const CompressOptions& opt);

struct DecodedSegment {
  ArchiveHeader header;
  QuantGrid quant;  // grid layout
  OutlierList outliers;
};

/// Lossless part of decompression: symbols back to quant-code grids.
std::vector<DecodedSegment> decode_archive(std::span<const std::uint8_t> bytes);

using AnyField = std::variant<Field<float>, Field<double>>;

/// Throws ErrorKind::Corruption on any malformed input.
AnyField decompress(std::span<const std::uint8_t> bytes, unsigned threads = 0);

/// As decompress, requiring the archive's scalar type to be T.
template <std::floating_point T>
Field<T> decompress_as(std::span<const std::uint8_t> bytes, unsigned threads = 0);

struct QualityStats {
  std::optional<double> compression_ratio;
  double max_abs_err = 0;
  double rmse = 0;
  double psnr = 0;  // +inf when rmse == 0
};

/// Throws ErrorKind::Data when dims differ. archive_bytes == 0 leaves the
/// compression ratio unset.
template <std::floating_point T>
QualityStats stats(const Field<T>& original, const Field<T>& reconstructed,
                   std::uint64_t archive_bytes);

/// "cr=... max_abs_err=... rmse=... psnr=..." on one line.
std::string format_stats(const QualityStats& s);

}  // namespace lzebc

#endif  // LZEBC_PIPELINE_HPP_
