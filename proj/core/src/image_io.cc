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

#include "sigmap/image_io.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sigmap/error.h"

namespace sigmap {
namespace {

constexpr long long kMaxPixels = 1LL << 28;

std::uint8_t ToByte(double v) {
  const double r = std::nearbyint(std::clamp(v, 0.0, 255.0));
  return static_cast<std::uint8_t>(r);
}

std::vector<std::uint8_t> ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

Raster FromBytes(int w, int h, int c, const std::uint8_t* bytes) {
  std::vector<double> data(static_cast<std::size_t>(w) * h * c);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = bytes[i];
  return Raster(w, h, c, std::move(data));
}

// Netpbm header token reader; skips whitespace and '#' comments.
class PnmHeader {
 public:
  explicit PnmHeader(const std::vector<std::uint8_t>& buf) : buf_(buf) {}

  long long NextInt(const std::string& path) {
    SkipSpace();
    if (pos_ >= buf_.size() || !std::isdigit(buf_[pos_])) {
      throw FormatError("malformed netpbm header in " + path);
    }
    long long v = 0;
    while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
      v = v * 10 + (buf_[pos_++] - '0');
      if (v > kMaxPixels) throw FormatError("dimension overflow in " + path);
    }
    return v;
  }
  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t DataOffset() const { return pos_ + 1; }
  void Skip(std::size_t n) { pos_ += n; }

 private:
  void SkipSpace() {
    while (pos_ < buf_.size()) {
      if (buf_[pos_] == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else if (std::isspace(buf_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& buf_;
  std::size_t pos_ = 0;
};

Raster LoadPnm(const std::vector<std::uint8_t>& buf, const std::string& path) {
  const int channels = buf[1] == '5' ? 1 : 3;
  PnmHeader header(buf);
  header.Skip(2);
  const long long w = header.NextInt(path);
  const long long h = header.NextInt(path);
  const long long maxval = header.NextInt(path);
  if (w <= 0 || h <= 0 || w * h > kMaxPixels) {
    throw FormatError("dimension overflow in " + path);
  }
  if (maxval <= 0 || maxval > 255) {
    throw FormatError("unsupported bit depth (maxval " + std::to_string(maxval) +
                      ") in " + path);
  }
  const std::size_t need = static_cast<std::size_t>(w * h * channels);
  const std::size_t offset = header.DataOffset();
  if (offset > buf.size() || buf.size() - offset < need) {
    throw FormatError("truncated raster data in " + path);
  }
  Raster r = FromBytes(static_cast<int>(w), static_cast<int>(h), channels, &buf[offset]);
  if (maxval != 255) {
    for (double& v : r.data()) v = v * 255.0 / static_cast<double>(maxval);
  }
  return r;
}

// Portable FloatMap: "PF" (RGB) or "Pf" (gray), dimensions, then a scale
// whose sign gives the byte order (negative = little-endian). Rows run
// bottom to top.
Raster LoadPfm(const std::vector<std::uint8_t>& buf, const std::string& path) {
  const int channels = buf[1] == 'F' ? 3 : 1;
  std::size_t pos = 2;
  std::string tokens[3];
  for (auto& token : tokens) {
    while (pos < buf.size() && std::isspace(buf[pos])) ++pos;
    while (pos < buf.size() && !std::isspace(buf[pos])) token.push_back(static_cast<char>(buf[pos++]));
  }
  ++pos;
  long long w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoll(tokens[0]);
    h = std::stoll(tokens[1]);
    scale = std::stod(tokens[2]);
  } catch (const std::exception&) {
    throw FormatError("malformed PFM header in " + path);
  }
  if (w <= 0 || h <= 0 || w * h > kMaxPixels) throw FormatError("dimension overflow in " + path);
  if (scale >= 0.0) throw FormatError("big-endian PFM is not supported: " + path);
  const std::size_t count = static_cast<std::size_t>(w * h * channels);
  if (pos > buf.size() || buf.size() - pos < 4 * count) {
    throw FormatError("truncated raster data in " + path);
  }
  Raster r(static_cast<int>(w), static_cast<int>(h), channels);
  const std::size_t row = static_cast<std::size_t>(w) * channels;
  for (long long y = 0; y < h; ++y) {
    const std::uint8_t* src = &buf[pos + 4 * row * static_cast<std::size_t>(h - 1 - y)];
    double* dst = r.data().data() + row * static_cast<std::size_t>(y);
    for (std::size_t i = 0; i < row; ++i) {
      std::uint32_t bits = 0;
      for (int b = 3; b >= 0; --b) bits = (bits << 8) | src[4 * i + b];
      float f;
      std::memcpy(&f, &bits, 4);
      if (!std::isfinite(f)) throw FormatError("non-finite PFM value in " + path);
      dst[i] = f;
    }
  }
  return r;
}

void SavePfm(const Raster& raster, const std::filesystem::path& path) {
  if (raster.channels() != 1 && raster.channels() != 3) {
    throw FormatError("cannot save a " + std::to_string(raster.channels()) +
                      "-channel raster as '.pfm'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << (raster.channels() == 3 ? "PF" : "Pf") << '\n'
      << raster.width() << ' ' << raster.height() << "\n-1.0\n";
  const std::size_t row = static_cast<std::size_t>(raster.width()) * raster.channels();
  std::vector<std::uint8_t> bytes(4 * row);
  for (int y = raster.height() - 1; y >= 0; --y) {
    const double* src = raster.data().data() + row * static_cast<std::size_t>(y);
    for (std::size_t i = 0; i < row; ++i) {
      const float f = static_cast<float>(src[i]);
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<std::uint8_t>(bits >> (8 * b));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Raster LoadPng(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FormatError("cannot decode PNG " + path.string() + ": " + image.message);
  }
  // Read the bit depth from the IHDR; the simplified API hides it.
  std::ifstream in(path, std::ios::binary);
  std::array<char, 25> ihdr{};
  in.read(ihdr.data(), ihdr.size());
  const int bit_depth = static_cast<unsigned char>(ihdr[24]);
  if (bit_depth > 8) {
    png_image_free(&image);
    throw FormatError("unsupported bit depth " + std::to_string(bit_depth) +
                      " in " + path.string());
  }
  if (image.format & PNG_FORMAT_FLAG_ALPHA) {
    png_image_free(&image);
    throw FormatError("unsupported alpha channel in " + path.string());
  }
  if (static_cast<long long>(image.width) * image.height > kMaxPixels) {
    png_image_free(&image);
    throw FormatError("dimension overflow in " + path.string());
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw FormatError("cannot decode PNG " + path.string() + ": " + msg);
  }
  return FromBytes(static_cast<int>(image.width), static_cast<int>(image.height),
                   channels, pixels.data());
}

std::vector<std::uint8_t> ToBytes(const Raster& raster) {
  const auto src = raster.data();
  std::vector<std::uint8_t> out(src.size());
  std::transform(src.begin(), src.end(), out.begin(), ToByte);
  return out;
}

std::string LowerExtension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

}  // namespace

Raster LoadRaster(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> buf = ReadAll(path);
  static constexpr std::array<std::uint8_t, 8> kPngMagic = {0x89, 'P', 'N', 'G',
                                                            '\r', '\n', 0x1A, '\n'};
  if (buf.size() >= 8 && std::equal(kPngMagic.begin(), kPngMagic.end(), buf.begin())) {
    return LoadPng(path);
  }
  if (buf.size() >= 2 && buf[0] == 'P' && (buf[1] == '5' || buf[1] == '6')) {
    return LoadPnm(buf, path.string());
  }
  if (buf.size() >= 2 && buf[0] == 'P' && (buf[1] == 'F' || buf[1] == 'f')) {
    return LoadPfm(buf, path.string());
  }
  throw FormatError("unsupported image format: " + path.string());
}

void SaveRaster(const Raster& raster, const std::filesystem::path& path) {
  const std::string ext = LowerExtension(path);
  if (ext == ".pfm") return SavePfm(raster, path);
  const std::vector<std::uint8_t> bytes = ToBytes(raster);
  if (ext == ".png") {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(raster.width());
    image.height = static_cast<png_uint_32>(raster.height());
    image.format = raster.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
      throw IoError("cannot write PNG " + path.string() + ": " + image.message);
    }
    return;
  }
  char magic;
  if (ext == ".pgm" && raster.channels() == 1) {
    magic = '5';
  } else if (ext == ".ppm" && raster.channels() == 3) {
    magic = '6';
  } else {
    throw FormatError("cannot save a " + std::to_string(raster.channels()) +
                      "-channel raster as '" + ext + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << 'P' << magic << '\n' << raster.width() << ' ' << raster.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Raster Quantize8(const Raster& raster) {
  Raster out = raster;
  for (double& v : out.data()) v = ToByte(v);
  return out;
}

}  // namespace sigmap
