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

#include "sigmap/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "sigmap/error.h"
#include "sigmap/metrics.h"

namespace sigmap {
namespace {

std::string Opt(const std::optional<double>& v) { return v ? FormatNumber(*v) : std::string(); }

std::optional<double> ParseOpt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "inf") return INFINITY;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw FormatError("not a number in report: '" + s + "'");
  return v;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

const char* KindName(ReportKind k) {
  switch (k) {
    case ReportKind::kMapError:
      return "map_error";
    case ReportKind::kStdError:
      return "std_error";
    case ReportKind::kDenoise:
      return "denoise";
  }
  return "?";
}

}  // namespace

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string EvalReport::LevelColumn() const {
  return kind_ == ReportKind::kStdError ? "sigma_t" : "sigma_av";
}

std::string EvalReport::ValueColumn() const {
  switch (kind_) {
    case ReportKind::kMapError:
      return "eps_m";
    case ReportKind::kStdError:
      return "sigma_e";
    case ReportKind::kDenoise:
      return "";
  }
  return "";
}

std::string EvalReport::ErrorColumn() const {
  return kind_ == ReportKind::kStdError ? "eps" : "eps_m";
}

std::vector<AggregateRow> EvalReport::Aggregate() const {
  using Key = std::tuple<std::string, double, bool>;
  std::map<Key, std::size_t> index;
  std::vector<AggregateRow> rows;
  std::vector<std::vector<const EvalRecord*>> members;
  for (const auto& r : records_) {
    const Key key{r.method, r.level, r.clipped};
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) {
      AggregateRow row;
      row.method = r.method;
      row.level = r.level;
      row.clipped = r.clipped;
      rows.push_back(std::move(row));
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    auto& row = rows[g];
    const auto& items = members[g];
    row.n = items.size();
    double psnr = 0.0, ssim = 0.0, value = 0.0;
    std::size_t np = 0, ns = 0, nv = 0;
    std::vector<double> values;
    for (const auto* r : items) {
      if (r->psnr) psnr += *r->psnr, ++np;
      if (r->ssim) ssim += *r->ssim, ++ns;
      if (r->value) value += *r->value, ++nv, values.push_back(*r->value);
    }
    if (np) row.psnr = psnr / static_cast<double>(np);
    if (ns) row.ssim = ssim / static_cast<double>(ns);
    if (nv && kind_ == ReportKind::kMapError) {
      row.error = value / static_cast<double>(nv);
      row.below_threshold = CheckThreshold(*row.error);
    }
    if (nv && kind_ == ReportKind::kStdError) {
      row.error = RelativeStdError(values, row.level);
    }
  }
  return rows;
}

void EvalReport::WriteCsv(std::ostream& out, const std::vector<std::string>& provenance) const {
  const bool has_value = kind_ != ReportKind::kDenoise;
  out << "image,method," << LevelColumn() << ",clipped";
  if (has_value) out << ',' << ValueColumn();
  out << ",psnr,ssim\n";
  for (const auto& r : records_) {
    out << r.image << ',' << r.method << ',' << FormatNumber(r.level) << ','
        << (r.clipped ? 1 : 0);
    if (has_value) out << ',' << Opt(r.value);
    out << ',' << Opt(r.psnr) << ',' << Opt(r.ssim) << '\n';
  }
  out << "# kind=" << KindName(kind_) << '\n';
  out << "# aggregate:method," << LevelColumn() << ",clipped,n";
  if (has_value) out << ',' << ErrorColumn();
  out << ",psnr,ssim";
  if (kind_ == ReportKind::kMapError) out << ",below_threshold";
  out << '\n';
  for (const auto& a : Aggregate()) {
    out << "# " << a.method << ',' << FormatNumber(a.level) << ',' << (a.clipped ? 1 : 0) << ','
        << a.n;
    if (has_value) out << ',' << Opt(a.error);
    out << ',' << Opt(a.psnr) << ',' << Opt(a.ssim);
    if (kind_ == ReportKind::kMapError) {
      out << ',' << (a.below_threshold ? (*a.below_threshold ? "1" : "0") : "");
    }
    out << '\n';
  }
  for (const auto& line : provenance) out << "# " << line << '\n';
}

void EvalReport::WriteCsv(const std::filesystem::path& path,
                          const std::vector<std::string>& provenance) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  WriteCsv(out, provenance);
  if (!out) throw IoError("write failed: " + path.string());
}

EvalReport EvalReport::ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty report: " + path.string());
  const auto header = SplitCsv(line);
  ReportKind kind = ReportKind::kDenoise;
  if (header.size() == 7 && header[4] == "eps_m") kind = ReportKind::kMapError;
  if (header.size() == 7 && header[4] == "sigma_e") kind = ReportKind::kStdError;
  if (header.size() < 6 || header[0] != "image") {
    throw FormatError("unrecognized report header in " + path.string());
  }
  EvalReport report(kind);
  const std::size_t off = kind == ReportKind::kDenoise ? 0 : 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = SplitCsv(line);
    if (f.size() != header.size()) throw FormatError("ragged row in " + path.string());
    EvalRecord r;
    r.image = f[0];
    r.method = f[1];
    r.level = ParseOpt(f[2]).value_or(0.0);
    r.clipped = f[3] == "1";
    if (off) r.value = ParseOpt(f[4]);
    r.psnr = ParseOpt(f[4 + off]);
    r.ssim = ParseOpt(f[5 + off]);
    report.Add(std::move(r));
  }
  return report;
}

}  // namespace sigmap
