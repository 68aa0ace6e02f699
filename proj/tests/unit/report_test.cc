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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "sigmap/error.h"
#include "testing/test_util.h"

namespace sigmap {
namespace {

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(20.0), "20");
  EXPECT_EQ(FormatNumber(INFINITY), "inf");
  for (double v : {1.0 / 3.0, 48.130803608679106, 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(FormatNumber(v)), v);
  }
}

TEST(EvalReportTest, MapErrorAggregatesAndThreshold) {
  EvalReport report(ReportKind::kMapError);
  report.Add({"a", "cnn", 10, false, 0.0625, {}, {}});
  report.Add({"b", "cnn", 10, false, 0.03125, {}, {}});
  report.Add({"a", "local_dct", 10, false, 0.9, {}, {}});
  const auto rows = report.Aggregate();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].method, "cnn");
  EXPECT_EQ(rows[0].n, 2u);
  EXPECT_EQ(*rows[0].error, 0.046875);
  EXPECT_TRUE(*rows[0].below_threshold);
  EXPECT_FALSE(*rows[1].below_threshold);

  std::ostringstream out;
  report.WriteCsv(out, {"seed=1"});
  EXPECT_EQ(out.str(),
            "image,method,sigma_av,clipped,eps_m,psnr,ssim\n"
            "a,cnn,10,0,0.0625,,\n"
            "b,cnn,10,0,0.03125,,\n"
            "a,local_dct,10,0,0.9,,\n"
            "# kind=map_error\n"
            "# aggregate:method,sigma_av,clipped,n,eps_m,psnr,ssim,below_threshold\n"
            "# cnn,10,0,2,0.046875,,,1\n"
            "# local_dct,10,0,1,0.9,,,0\n"
            "# seed=1\n");
}

TEST(EvalReportTest, StdErrorGroupsByClipFlag) {
  EvalReport report(ReportKind::kStdError);
  report.Add({"f0", "local_dct", 5, false, 6.0, {}, {}});
  report.Add({"f0", "local_dct", 5, true, 4.0, {}, {}});
  report.Add({"f1", "local_dct", 5, true, 4.0, {}, {}});
  const auto rows = report.Aggregate();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(*rows[0].error, 0.2);
  EXPECT_DOUBLE_EQ(*rows[1].error, std::sqrt(2.0) / 10.0);
  EXPECT_FALSE(rows[1].below_threshold.has_value());
}

TEST(EvalReportTest, AggregateEqualsMeanOfItems) {
  EvalReport report(ReportKind::kDenoise);
  report.Add({"x", "true", 20, false, {}, 30.0, 0.8});
  report.Add({"y", "true", 20, false, {}, 32.0, 0.9});
  const auto rows = report.Aggregate();
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(*rows[0].psnr, 31.0);
  EXPECT_DOUBLE_EQ(*rows[0].ssim, 0.85);
  EXPECT_EQ(rows[0].n, 2u);
}

TEST(EvalReportTest, CsvRoundTrip) {
  testing::TempDir dir;
  for (auto kind : {ReportKind::kMapError, ReportKind::kStdError, ReportKind::kDenoise}) {
    EvalReport report(kind);
    const std::optional<double> value =
        kind == ReportKind::kDenoise ? std::nullopt : std::optional<double>(0.125);
    report.Add({"img_1", "m", 7.5, true, value, 33.25, 0.5});
    report.Add({"img_2", "m", 7.5, false, value, INFINITY, 1.0});
    report.WriteCsv(dir / "r.csv");
    const EvalReport back = EvalReport::ReadCsv(dir / "r.csv");
    EXPECT_EQ(back.kind(), kind);
    ASSERT_EQ(back.records().size(), 2u);
    EXPECT_EQ(back.records()[0].image, "img_1");
    EXPECT_EQ(back.records()[0].level, 7.5);
    EXPECT_TRUE(back.records()[0].clipped);
    EXPECT_EQ(back.records()[0].value, value);
    EXPECT_EQ(back.records()[1].psnr, INFINITY);
    EXPECT_EQ(back.records()[0].ssim, 0.5);
  }
}

TEST(EvalReportTest, MalformedCsvIsRejected) {
  testing::TempDir dir;
  testing::WriteText(dir / "bad.csv", "name,value\n");
  EXPECT_THROW(EvalReport::ReadCsv(dir / "bad.csv"), FormatError);
  testing::WriteText(dir / "ragged.csv", "image,method,sigma_av,clipped,psnr,ssim\na,b,1\n");
  EXPECT_THROW(EvalReport::ReadCsv(dir / "ragged.csv"), FormatError);
  EXPECT_THROW(EvalReport::ReadCsv(dir / "none.csv"), IoError);
}

}  // namespace
}  // namespace sigmap
