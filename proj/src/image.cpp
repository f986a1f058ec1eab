/*
 * Copyright 2026 The sonarmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sonarmap/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "sonarmap/error.hpp"

namespace sonarmap {
namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string NextToken(std::istream& in) {
  std::string token;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

int ParseHeaderInt(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": malformed PGM header");
  }
}

}  // namespace

BinaryMask BinaryMask::FromImage(RangeImage image) {
  for (const std::uint8_t v : image.pixels()) {
    if (v != 0 && v != 255) {
      throw DataError("mask pixel value " + std::to_string(v) +
                      " is not 0 or 255");
    }
  }
  BinaryMask mask;
  mask.image_ = std::move(image);
  return mask;
}

BinaryMask BinaryMask::FromSupport(const RangeImage& image) {
  BinaryMask mask(image.rows(), image.cols());
  auto src = image.pixels();
  auto dst = mask.image_.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > 0 ? 255 : 0;
  return mask;
}

void CheckMatches(const SonarConfig& config, const RangeImage& image) {
  if (image.rows() != config.range_bins || image.cols() != config.bearing_bins) {
    throw DataError("image is " + std::to_string(image.cols()) + "x" +
                    std::to_string(image.rows()) + " but the sonar config is " +
                    std::to_string(config.bearing_bins) + "x" +
                    std::to_string(config.range_bins));
  }
}

FloatImage ToFloat(const RangeImage& image) {
  FloatImage out(image.rows(), image.cols());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  return out;
}

std::uint8_t QuantizePixel(double value) {
  if (!(value > 0.0)) return 0;
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(value));
}

RangeImage Quantize(const FloatImage& image) {
  RangeImage out(image.rows(), image.cols());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = QuantizePixel(src[i]);
  return out;
}

RangeImage ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  if (NextToken(in) != "P5") {
    throw DataError(path.string() + ": not a binary PGM (P5) file");
  }
  const int width = ParseHeaderInt(NextToken(in), path);
  const int height = ParseHeaderInt(NextToken(in), path);
  const int maxval = ParseHeaderInt(NextToken(in), path);
  if (width <= 0 || height <= 0) {
    throw DataError(path.string() + ": invalid PGM dimensions");
  }
  if (maxval != 255) {
    throw DataError(path.string() + ": only 8-bit PGM (maxval 255) supported");
  }
  RangeImage image(height, width);
  auto pixels = image.pixels();
  in.read(reinterpret_cast<char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw DataError(path.string() + ": truncated PGM data");
  }
  return image;
}

void WritePgm(const std::filesystem::path& path, const RangeImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  auto pixels = image.pixels();
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("failed writing image " + path.string());
}

}  // namespace sonarmap
