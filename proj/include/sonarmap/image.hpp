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

#ifndef SONARMAP_IMAGE_HPP_
#define SONARMAP_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sonarmap/geometry.hpp"

namespace sonarmap {

// Row-major 2D grid. For range images rows index range bins (row 0 is the
// minimum range) and columns index bearing bins.
template <typename T>
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * cols_ + col];
  }
  const T& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * cols_ + col];
  }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool SameShape(const Grid2D& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// 8-bit sonar intensity image I(bearing, range).
using RangeImage = Grid2D<std::uint8_t>;
// Working buffer for filters; quantized back to 8 bits only at output.
using FloatImage = Grid2D<double>;

// Per-pixel keep (255) / discard (0) mask aligned with a RangeImage.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int rows, int cols, bool keep = false)
      : image_(rows, cols, keep ? 255 : 0) {}

  // Throws DataError if any pixel is neither 0 nor 255.
  static BinaryMask FromImage(RangeImage image);
  // 255 wherever the image is nonzero.
  static BinaryMask FromSupport(const RangeImage& image);

  int rows() const { return image_.rows(); }
  int cols() const { return image_.cols(); }
  bool keep(int row, int col) const { return image_(row, col) != 0; }
  void set(int row, int col, bool keep) { image_(row, col) = keep ? 255 : 0; }
  const RangeImage& image() const { return image_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  RangeImage image_;
};

// Throws DataError unless the image is range_bins x bearing_bins.
void CheckMatches(const SonarConfig& config, const RangeImage& image);

FloatImage ToFloat(const RangeImage& image);
// Rounds half away from zero and clips to [0, 255].
RangeImage Quantize(const FloatImage& image);
std::uint8_t QuantizePixel(double value);

// Binary PGM (P5), maxval 255.
RangeImage ReadPgm(const std::filesystem::path& path);
void WritePgm(const std::filesystem::path& path, const RangeImage& image);

}  // namespace sonarmap

#endif  // SONARMAP_IMAGE_HPP_
