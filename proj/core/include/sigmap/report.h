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

#ifndef SIGMAP_REPORT_H_
#define SIGMAP_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sigmap {

// What the per-item error column holds.
enum class ReportKind {
  // Sigma-map estimation: per-item eps_m ratio, aggregate = mean of ratios.
  kMapError,
  // AWGN std estimation: per-item estimate sigma_e, aggregate = relative
  // std error over the group.
  kStdError,
  // Denoising: PSNR and SSIM only.
  kDenoise,
};

struct EvalRecord {
  std::string image;
  std::string method;
  double level = 0.0;  // sigma_av or sigma_t
  bool clipped = false;
  std::optional<double> value;  // eps_m ratio or sigma_e, per kind
  std::optional<double> psnr;
  std::optional<double> ssim;
};

struct AggregateRow {
  std::string method;
  double level = 0.0;
  bool clipped = false;
  std::size_t n = 0;
  std::optional<double> error;  // eps_m or eps
  std::optional<double> psnr;
  std::optional<double> ssim;
  std::optional<bool> below_threshold;
};

class EvalReport {
 public:
  explicit EvalReport(ReportKind kind) : kind_(kind) {}

  ReportKind kind() const { return kind_; }
  const std::vector<EvalRecord>& records() const { return records_; }
  void Add(EvalRecord record) { records_.push_back(std::move(record)); }

  // Groups by (method, level, clipped) in first-appearance order.
  std::vector<AggregateRow> Aggregate() const;

  // CSV: header row, one line per record, then a '#'-prefixed block with the
  // aggregates. Provenance lines, if any, follow the aggregates.
  void WriteCsv(std::ostream& out, const std::vector<std::string>& provenance = {}) const;
  void WriteCsv(const std::filesystem::path& path,
                const std::vector<std::string>& provenance = {}) const;
  static EvalReport ReadCsv(const std::filesystem::path& path);

  // Column names for the level and error fields of this kind.
  std::string LevelColumn() const;
  std::string ValueColumn() const;
  std::string ErrorColumn() const;

 private:
  ReportKind kind_;
  std::vector<EvalRecord> records_;
};

// Shortest decimal form that reads back to the same double ("%.17g" trimmed
// to the fewest digits that round-trip); "inf" for infinity.
std::string FormatNumber(double v);

}  // namespace sigmap

#endif  // SIGMAP_REPORT_H_
