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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include "lzebc/lzebc.hpp"

namespace lzebc::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s.front() == '-' || v == 0)
    throw Error(ErrorKind::Usage, std::string("bad ") + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_extents(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_count(p, what));
  if (out.empty() || out.size() > 3)
    throw Error(ErrorKind::Usage, std::string(what) + " needs 1 to 3 values");
  return out;
}

ErrorBound parse_eb(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::Usage, "error bound must look like rel:1e-4 or abs:0.01");
  const std::string mode = s.substr(0, colon);
  const std::string value = s.substr(colon + 1);
  ErrorBound eb;
  if (mode == "rel") {
    eb.mode = EbMode::Rel;
  } else if (mode == "abs") {
    eb.mode = EbMode::Abs;
  } else {
    throw Error(ErrorKind::Usage, "error bound mode must be rel or abs");
  }
  std::size_t used = 0;
  try {
    eb.value = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || !(eb.value > 0) ||
      !std::isfinite(eb.value))
    throw Error(ErrorKind::Usage, "error bound value must be a positive number");
  return eb;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Data, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Data, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Data, "failed writing " + path);
}

// Raw inputs are headerless, so the size check against -d/-t is a usage
// problem rather than a data problem.
std::vector<std::uint8_t> read_raw(const std::string& path, const Dims& dims,
                                   Dtype dtype) {
  auto bytes = read_file(path);
  const std::uint64_t want = dims.count() * dtype_size(dtype);
  if (bytes.size() != want)
    throw Error(ErrorKind::Usage, "size mismatch: " + path + " has " +
                                      std::to_string(bytes.size()) +
                                      " bytes but the dims and type need " +
                                      std::to_string(want));
  return bytes;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return kUsage;
    case ErrorKind::Corruption: return kCorrupt;
    default: return kDataError;
  }
}

struct FieldArgs {
  std::string dims;
  std::string dtype = "f32";

  Dims parsed_dims() const { return Dims::from_extents(parse_extents(dims, "dims")); }
  Dtype parsed_dtype() const {
    if (dtype == "f32") return Dtype::F32;
    if (dtype == "f64") return Dtype::F64;
    throw Error(ErrorKind::Usage, "type must be f32 or f64");
  }
};

void add_field_args(CLI::App* cmd, FieldArgs& f) {
  cmd->add_option("-d,--dims", f.dims, "Grid extents X[,Y[,Z]], x fastest")->required();
  cmd->add_option("-t,--type", f.dtype, "Scalar type: f32 or f64");
}

template <class Fn>
auto with_dtype(Dtype t, Fn&& fn) {
  if (t == Dtype::F32) return fn(float{});
  return fn(double{});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error-bounded lossy compressor for 1D/2D/3D floating-point grids",
               "lzebc"};
  app.require_subcommand(1);

  unsigned threads = 0;
  bool verbose = false;

  // compress
  FieldArgs c_field;
  std::string c_eb = "rel:1e-4", c_workflow = "auto", c_chunk, c_select = "exact";
  std::uint32_t c_cap = 1024;
  std::uint64_t c_segment_mb = 1024;
  std::string c_in, c_out;
  auto* compress_cmd = app.add_subcommand("compress", "Compress a raw field file");
  add_field_args(compress_cmd, c_field);
  compress_cmd->add_option("-e,--error-bound", c_eb, "rel:<value> or abs:<value>");
  compress_cmd->add_option("-w,--workflow", c_workflow, "auto, huff, rle or rlevle");
  compress_cmd->add_option("--cap", c_cap, "Quant-code dictionary size (power of two)");
  compress_cmd->add_option("--chunk", c_chunk, "Chunk edges X[,Y[,Z]]");
  compress_cmd->add_option("--select", c_select, "Auto workflow basis: exact or estimate");
  compress_cmd->add_option("--segment-mb", c_segment_mb,
                           "Split fields larger than this many MiB into segments");
  compress_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  compress_cmd->add_flag("-v,--verbose", verbose);
  compress_cmd->add_option("input", c_in, "Raw little-endian input")->required();
  compress_cmd->add_option("output", c_out, "Archive to write")->required();

  // decompress
  std::string d_in, d_out;
  auto* decompress_cmd = app.add_subcommand("decompress", "Decompress an archive");
  decompress_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  decompress_cmd->add_flag("-v,--verbose", verbose);
  decompress_cmd->add_option("input", d_in, "Archive")->required();
  decompress_cmd->add_option("output", d_out, "Raw field to write")->required();

  // analyze
  FieldArgs a_field;
  std::string a_eb = "rel:1e-4", a_chunk, a_select = "exact";
  std::uint32_t a_cap = 1024, a_dmax = 200;
  std::uint64_t a_seed = 0, a_samples = 0;
  std::string a_in, a_out = "-";
  auto* analyze_cmd = app.add_subcommand("analyze", "Madogram and histogram analysis as CSV");
  add_field_args(analyze_cmd, a_field);
  analyze_cmd->add_option("-e,--error-bound", a_eb, "rel:<value> or abs:<value>");
  analyze_cmd->add_option("--cap", a_cap, "Quant-code dictionary size");
  analyze_cmd->add_option("--chunk", a_chunk, "Chunk edges X[,Y[,Z]]");
  analyze_cmd->add_option("--select", a_select, "exact or estimate");
  analyze_cmd->add_option("--seed", a_seed, "Sampling seed");
  analyze_cmd->add_option("--samples", a_samples, "Pair samples (0 = default)");
  analyze_cmd->add_option("--dmax", a_dmax, "Largest sampled distance");
  analyze_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  analyze_cmd->add_option("input", a_in, "Raw little-endian input")->required();
  analyze_cmd->add_option("output", a_out, "CSV path, or - for stdout");

  // stats
  FieldArgs s_field;
  std::string s_orig, s_recon, s_archive;
  std::uint64_t s_archive_size = 0;
  auto* stats_cmd = app.add_subcommand("stats", "Compare two raw fields");
  add_field_args(stats_cmd, s_field);
  stats_cmd->add_option("--archive", s_archive, "Archive whose size sets the ratio");
  stats_cmd->add_option("--archive-size", s_archive_size, "Archive size in bytes");
  stats_cmd->add_option("original", s_orig, "Original raw field")->required();
  stats_cmd->add_option("reconstructed", s_recon, "Reconstructed raw field")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  auto select_mode = [](const std::string& s) {
    if (s == "exact") return SelectMode::Exact;
    if (s == "estimate") return SelectMode::Estimate;
    throw Error(ErrorKind::Usage, "select must be exact or estimate");
  };

  try {
    if (*compress_cmd) {
      const Dims dims = c_field.parsed_dims();
      const Dtype dtype = c_field.parsed_dtype();
      CompressOptions opt;
      opt.eb = parse_eb(c_eb);
      opt.cap = c_cap;
      opt.threads = threads;
      opt.select.mode = select_mode(c_select);
      opt.segment_bytes = c_segment_mb << 20;
      if (!c_chunk.empty()) {
        const auto e = parse_extents(c_chunk, "chunk");
        opt.chunk = ChunkSpec{e[0], e.size() > 1 ? e[1] : 1, e.size() > 2 ? e[2] : 1};
      }
      if (c_workflow == "auto") {
        opt.workflow = WorkflowChoice::Auto;
      } else if (c_workflow == "huff") {
        opt.workflow = WorkflowChoice::Huffman;
      } else if (c_workflow == "rle") {
        opt.workflow = WorkflowChoice::Rle;
      } else if (c_workflow == "rlevle") {
        opt.workflow = WorkflowChoice::RleVle;
      } else {
        throw Error(ErrorKind::Usage, "workflow must be auto, huff, rle or rlevle");
      }
      const auto raw = read_raw(c_in, dims, dtype);

      with_dtype(dtype, [&](auto tag) {
        using T = decltype(tag);
        const auto field = ingest<T>(raw, dims);
        const auto archive = compress(field, opt);
        write_file(c_out, archive.bytes);
        const auto back = decompress_as<T>(archive.bytes, threads);
        const auto q = stats(field, back, archive.bytes.size());
        std::ostringstream eb;
        eb.precision(std::numeric_limits<double>::max_digits10);
        eb << archive.eb_abs;
        out << "workflow=" << to_string(archive.workflow) << " eb_abs=" << eb.str()
            << " bytes=" << archive.bytes.size() << ' ' << format_stats(q) << '\n';
        if (verbose)
          err << "segments=" << archive.segments << " outliers=" << archive.outliers
              << " payload_bytes=" << archive.payload_bytes << '\n';
        return 0;
      });
      return kOk;
    }

    if (*decompress_cmd) {
      const auto bytes = read_file(d_in);
      const auto field = decompress(bytes, threads);
      std::visit(
          [&](const auto& f) {
            write_file(d_out, to_bytes(f));
            if (verbose) {
              const auto& d = f.dims();
              err << "dims=" << d.nx << ',' << d.ny << ',' << d.nz
                  << " ndim=" << d.ndim << '\n';
            }
          },
          field);
      return kOk;
    }

    if (*analyze_cmd) {
      const Dims dims = a_field.parsed_dims();
      const Dtype dtype = a_field.parsed_dtype();
      AnalyzeOptions opt;
      opt.eb = parse_eb(a_eb);
      opt.cap = a_cap;
      opt.seed = a_seed;
      opt.samples = a_samples;
      opt.max_distance = a_dmax;
      opt.threads = threads;
      opt.select.mode = select_mode(a_select);
      if (!a_chunk.empty()) {
        const auto e = parse_extents(a_chunk, "chunk");
        opt.chunk = ChunkSpec{e[0], e.size() > 1 ? e[1] : 1, e.size() > 2 ? e[2] : 1};
      }
      const auto raw = read_raw(a_in, dims, dtype);
      const Analysis analysis = with_dtype(dtype, [&](auto tag) {
        using T = decltype(tag);
        return analyze(ingest<T>(raw, dims), opt);
      });
      if (a_out == "-") {
        write_csv(out, analysis);
      } else {
        std::ofstream csv(a_out);
        if (!csv) throw Error(ErrorKind::Data, "cannot write " + a_out);
        write_csv(csv, analysis);
      }
      return kOk;
    }

    if (*stats_cmd) {
      const Dims dims = s_field.parsed_dims();
      const Dtype dtype = s_field.parsed_dtype();
      std::uint64_t archive_bytes = s_archive_size;
      if (!s_archive.empty()) archive_bytes = read_file(s_archive).size();
      const auto a = read_raw(s_orig, dims, dtype);
      const auto b = read_raw(s_recon, dims, dtype);
      const auto q = with_dtype(dtype, [&](auto tag) {
        using T = decltype(tag);
        return stats(ingest<T>(a, dims), ingest<T>(b, dims), archive_bytes);
      });
      out << format_stats(q) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace lzebc::cli
