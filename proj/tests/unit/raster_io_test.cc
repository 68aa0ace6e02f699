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

#include <gtest/gtest.h>
#include <png.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "sigmap/error.h"
#include "sigmap/image_io.h"
#include "sigmap/prng.h"
#include "sigmap/raster.h"
#include "sigmap/smap_io.h"
#include "testing/test_util.h"

namespace sigmap {
namespace {

using testing::ReadBytes;
using testing::TempDir;
using testing::WriteBytes;

Raster RandomRaster(int w, int h, int c, std::uint64_t seed) {
  Prng rng(seed);
  Raster r(w, h, c);
  for (double& v : r.data()) v = static_cast<double>(rng.UniformInt(256));
  return r;
}

TEST(RasterTest, ShapeAndIndexing) {
  Raster r(3, 2, 3, 1.0);
  EXPECT_EQ(r.data().size(), 18u);
  r.at(2, 1, 2) = 9.0;
  EXPECT_EQ(r.data()[(1 * 3 + 2) * 3 + 2], 9.0);
  EXPECT_EQ(r.Channel(2).at(2, 1), 9.0);
  EXPECT_EQ(r.Crop(1, 1, 2, 1).at(1, 0, 2), 9.0);
}

TEST(RasterTest, RejectsInvalidConstruction) {
  EXPECT_THROW(Raster(0, 4, 1), DimensionError);
  EXPECT_THROW(Raster(4, 4, 2), DimensionError);
  EXPECT_THROW(Raster(2, 2, 1, std::vector<double>(3)), DimensionError);
  EXPECT_THROW(Raster(1, 1, 1, std::vector<double>{NAN}), ParameterError);
}

TEST(SigmaMapTest, EnforcesNonNegativity) {
  EXPECT_THROW(SigmaMap(2, 1, std::vector<double>{1.0, -0.5}), ParameterError);
  EXPECT_THROW(SigmaMap(1, 1, std::vector<double>{INFINITY}), ParameterError);
  SigmaMap m(2, 2, 1.0);
  EXPECT_THROW(m.set(0, 0, -1.0), ParameterError);
  m.set(1, 1, 3.0);
  EXPECT_DOUBLE_EQ(m.MeanVariance(), (1.0 + 1.0 + 1.0 + 9.0) / 4.0);
  EXPECT_EQ(m.Max(), 3.0);
  EXPECT_EQ(m.Min(), 1.0);
}

TEST(RasterTest, BrightnessIsChannelMean) {
  Raster r(1, 1, 3, std::vector<double>{30, 60, 120});
  EXPECT_DOUBLE_EQ(Brightness(r).at(0, 0), 70.0);
}

TEST(ImageIoTest, FlatRasterRoundTripsThroughEveryFormat) {
  TempDir dir;
  const Raster gray(4, 4, 1, 128.0);
  for (const char* name : {"a.png", "a.pgm"}) {
    SaveRaster(gray, dir / name);
    EXPECT_EQ(LoadRaster(dir / name), gray) << name;
  }
}

TEST(ImageIoTest, ColorRoundTripsAllChannels) {
  TempDir dir;
  const Raster color = RandomRaster(7, 5, 3, 1);
  for (const char* name : {"c.png", "c.ppm"}) {
    SaveRaster(color, dir / name);
    const Raster back = LoadRaster(dir / name);
    ASSERT_EQ(back.channels(), 3);
    EXPECT_EQ(back, color) << name;
  }
}

TEST(ImageIoTest, SaveRoundsAndClamps) {
  TempDir dir;
  Raster r(4, 1, 1, std::vector<double>{-20.0, 12.4, 12.6, 300.0});
  SaveRaster(r, dir / "q.pgm");
  const Raster back = LoadRaster(dir / "q.pgm");
  EXPECT_EQ(back.data()[0], 0.0);
  EXPECT_EQ(back.data()[1], 12.0);
  EXPECT_EQ(back.data()[2], 13.0);
  EXPECT_EQ(back.data()[3], 255.0);
  EXPECT_EQ(back, Quantize8(r));
}

TEST(ImageIoTest, SixteenBitPngIsRejected) {
  TempDir dir;
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = 4;
  image.height = 4;
  image.format = PNG_FORMAT_LINEAR_Y;
  std::vector<png_uint_16> pixels(16, 30000);
  const auto path = (dir / "deep.png").string();
  ASSERT_TRUE(png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr));
  EXPECT_THROW(LoadRaster(path), FormatError);
}

TEST(ImageIoTest, SixteenBitPgmIsRejected) {
  TempDir dir;
  std::string data = "P5\n2 2\n65535\n";
  data.append(8, '\x10');
  WriteBytes(dir / "deep.pgm", {data.begin(), data.end()});
  EXPECT_THROW(LoadRaster(dir / "deep.pgm"), FormatError);
}

TEST(ImageIoTest, TruncatedPgmIsRejected) {
  TempDir dir;
  std::string data = "P5\n4 4\n255\n";
  data.append(10, '\x40');
  WriteBytes(dir / "short.pgm", {data.begin(), data.end()});
  EXPECT_THROW(LoadRaster(dir / "short.pgm"), FormatError);
}

TEST(ImageIoTest, DimensionOverflowIsRejected) {
  TempDir dir;
  const std::string data = "P5\n4000000000 4000000000\n255\n";
  WriteBytes(dir / "huge.pgm", {data.begin(), data.end()});
  EXPECT_THROW(LoadRaster(dir / "huge.pgm"), FormatError);
}

TEST(ImageIoTest, PgmWithCommentsParses) {
  TempDir dir;
  std::string data = "P5\n# made by hand\n2 1\n255\n";
  data += '\x05';
  data += '\xfa';
  WriteBytes(dir / "c.pgm", {data.begin(), data.end()});
  const Raster r = LoadRaster(dir / "c.pgm");
  EXPECT_EQ(r.data()[0], 5.0);
  EXPECT_EQ(r.data()[1], 250.0);
}

TEST(ImageIoTest, MissingFileAndUnknownFormat) {
  TempDir dir;
  EXPECT_THROW(LoadRaster(dir / "absent.png"), IoError);
  const std::string junk = "hello world";
  WriteBytes(dir / "junk.png", {junk.begin(), junk.end()});
  EXPECT_THROW(LoadRaster(dir / "junk.png"), FormatError);
}

TEST(ImageIoTest, PfmKeepsOutOfRangeValues) {
  TempDir dir;
  Raster r(3, 2, 3);
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = -40.5 + 61.25 * static_cast<double>(i);
  SaveRaster(r, dir / "r.pfm");
  EXPECT_EQ(LoadRaster(dir / "r.pfm"), r);
  SaveRaster(r.Channel(1), dir / "g.pfm");
  EXPECT_EQ(LoadRaster(dir / "g.pfm"), r.Channel(1));
}

// Rows are stored bottom to top as little-endian binary32.
TEST(ImageIoTest, PfmLayout) {
  TempDir dir;
  std::vector<std::uint8_t> bytes;
  const std::string head = "Pf\n1 2\n-1.0\n";
  bytes.assign(head.begin(), head.end());
  for (float f : {2.5f, -1.0f}) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
  WriteBytes(dir / "a.pfm", bytes);
  const Raster r = LoadRaster(dir / "a.pfm");
  ASSERT_EQ(r.height(), 2);
  EXPECT_EQ(r.at(0, 0), -1.0);
  EXPECT_EQ(r.at(0, 1), 2.5);
  SaveRaster(r, dir / "b.pfm");
  EXPECT_EQ(ReadBytes(dir / "b.pfm"), bytes);
  bytes.pop_back();
  WriteBytes(dir / "c.pfm", bytes);
  EXPECT_THROW(LoadRaster(dir / "c.pfm"), FormatError);
}

TEST(SmapIoTest, TwoByTwoRoundTripsBitExactly) {
  TempDir dir;
  const SigmaMap m(2, 2, std::vector<double>{1.5, 2.5, 3.5, 4.5});
  SaveSigmaMap(m, dir / "m.smap");
  EXPECT_EQ(LoadSigmaMap(dir / "m.smap"), m);
}

TEST(SmapIoTest, LayoutIsDocumentedLittleEndian) {
  const auto bytes = EncodeSigmaMap(SigmaMap(2, 1, std::vector<double>{1.0, 0.5}));
  const std::vector<std::uint8_t> expected = {
      'S', 'M', 'A', 'P', 1,                            // magic, version
      2, 0, 0, 0, 1, 0, 0, 0,                           // width, height
      0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0x3f};  // 1.0f, 0.5f
  EXPECT_EQ(bytes, expected);
}

TEST(SmapIoTest, RoundTripIsIdentityOnFloatRepresentableMaps) {
  Prng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 1 + static_cast<int>(rng.UniformInt(40));
    const int h = 1 + static_cast<int>(rng.UniformInt(40));
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (double& x : v) x = static_cast<float>(100.0 * rng.Uniform());
    const SigmaMap m(w, h, v);
    EXPECT_EQ(DecodeSigmaMap(EncodeSigmaMap(m)), m);
  }
}

TEST(SmapIoTest, RoundToFloatMatchesSaveLoad) {
  const SigmaMap m(3, 1, std::vector<double>{0.1, 1.0 / 3.0, 1e-9});
  EXPECT_EQ(DecodeSigmaMap(EncodeSigmaMap(m)), RoundToFloat(m));
}

TEST(SmapIoTest, BadMagicIsFormatError) {
  auto bytes = EncodeSigmaMap(SigmaMap(2, 2, 1.0));
  bytes[0] = 'X';
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
}

TEST(SmapIoTest, VersionMismatchIsFormatError) {
  auto bytes = EncodeSigmaMap(SigmaMap(2, 2, 1.0));
  bytes[4] = 2;
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
}

TEST(SmapIoTest, TruncatedPayloadIsFormatError) {
  auto bytes = EncodeSigmaMap(SigmaMap(10, 10, 1.0));
  bytes.resize(13 + 50 * 4);
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
  bytes.resize(7);
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
}

TEST(SmapIoTest, TrailingBytesAndNegativeValuesAreRejected) {
  auto bytes = EncodeSigmaMap(SigmaMap(1, 1, 1.0));
  bytes.push_back(0);
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
  bytes.pop_back();
  bytes[16] = 0xbf;  // 1.0f -> -1.0f
  EXPECT_THROW(DecodeSigmaMap(bytes), FormatError);
}

TEST(SmapIoTest, FileBytesMatchEncoder) {
  TempDir dir;
  const SigmaMap m(3, 2, std::vector<double>{0, 1, 2, 3, 4, 5});
  SaveSigmaMap(m, dir / "m.smap");
  const auto file = ReadBytes(dir / "m.smap");
  const auto enc = EncodeSigmaMap(m);
  EXPECT_EQ(std::vector<std::uint8_t>(file.begin(), file.end()), enc);
  EXPECT_THROW(LoadSigmaMap(dir / "nope.smap"), IoError);
}

}  // namespace
}  // namespace sigmap
