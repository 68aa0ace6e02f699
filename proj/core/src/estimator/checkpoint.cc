// Copyright 2026 The sigmap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sigmap/error.h"
#include "sigmap/estimator.h"

namespace sigmap {
namespace {

constexpr std::uint32_t kCheckpointVersion = 1;

class Writer {
 public:
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Bytes(const std::string& s) { out_.insert(out_.end(), s.begin(), s.end()); }
  std::vector<std::uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& in, const std::string& source)
      : in_(in), source_(source) {}

  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Bytes(std::size_t n) {
    Need(n);
    std::string s(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == in_.size(); }

 private:
  void Need(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("truncated checkpoint: " + source_);
  }

  const std::vector<std::uint8_t>& in_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> EncodeCheckpoint(const EstimatorParams& params) {
  Writer w;
  w.Bytes("SMCK");
  w.U32(kCheckpointVersion);
  const auto& cfg = params.config();
  w.U32(static_cast<std::uint32_t>(cfg.input_channels));
  w.U32(static_cast<std::uint32_t>(cfg.blocks));
  w.U32(EstimatorConfig::kLevels);
  for (int c : cfg.channels) w.U32(static_cast<std::uint32_t>(c));
  w.F64(params.adam().beta1);
  w.F64(params.adam().beta2);
  w.F64(params.adam().epsilon);
  w.U64(static_cast<std::uint64_t>(params.iteration()));
  w.U32(static_cast<std::uint32_t>(params.tensors().size()));
  for (const auto& t : params.tensors()) {
    w.U32(static_cast<std::uint32_t>(t.name.size()));
    w.Bytes(t.name);
    w.U32(static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) w.U32(static_cast<std::uint32_t>(d));
    for (auto span : {params.values(), params.first_moment(), params.second_moment()}) {
      for (std::size_t i = 0; i < t.size; ++i) w.F64(span[t.offset + i]);
    }
  }
  return w.Take();
}

EstimatorParams DecodeCheckpoint(const std::vector<std::uint8_t>& bytes, const std::string& source) {
  Reader r(bytes, source);
  if (r.Bytes(4) != "SMCK") throw FormatError("bad checkpoint magic: " + source);
  const std::uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version) + ": " + source);
  }
  EstimatorConfig cfg;
  cfg.input_channels = static_cast<int>(r.U32());
  cfg.blocks = static_cast<int>(r.U32());
  if (r.U32() != EstimatorConfig::kLevels) throw FormatError("unexpected level count: " + source);
  for (int& c : cfg.channels) c = static_cast<int>(r.U32());
  EstimatorParams params;
  try {
    params = EstimatorParams::Zeros(cfg);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid checkpoint configuration: ") + e.what());
  }
  params.adam().beta1 = r.F64();
  params.adam().beta2 = r.F64();
  params.adam().epsilon = r.F64();
  params.set_iteration(static_cast<std::int64_t>(r.U64()));
  const std::uint32_t count = r.U32();
  if (count != params.tensors().size()) throw FormatError("tensor count mismatch: " + source);
  for (const auto& t : params.tensors()) {
    const std::uint32_t len = r.U32();
    if (len > 256) throw FormatError("implausible tensor name length: " + source);
    const std::string name = r.Bytes(len);
    if (name != t.name) {
      throw FormatError("expected tensor '" + t.name + "', found '" + name + "': " + source);
    }
    const std::uint32_t rank = r.U32();
    if (rank != t.shape.size()) throw FormatError("rank mismatch for '" + name + "': " + source);
    for (int d : t.shape) {
      if (r.U32() != static_cast<std::uint32_t>(d)) {
        throw FormatError("shape mismatch for '" + name + "': " + source);
      }
    }
    for (auto span : {params.values(), params.first_moment(), params.second_moment()}) {
      for (std::size_t i = 0; i < t.size; ++i) span[t.offset + i] = r.F64();
    }
  }
  if (!r.AtEnd()) throw FormatError("trailing bytes in checkpoint: " + source);
  return params;
}

void SaveCheckpoint(const EstimatorParams& params, const std::filesystem::path& path) {
  const auto bytes = EncodeCheckpoint(params);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

EstimatorParams LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return DecodeCheckpoint(bytes, path.string());
}

}  // namespace sigmap
