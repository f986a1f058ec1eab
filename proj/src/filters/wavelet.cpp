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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sonarmap/error.hpp"
#include "sonarmap/filters.hpp"

namespace sonarmap {
namespace {

// Daubechies-4 scaling filter; the wavelet filter is g[k] = (-1)^k h[3 - k].
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kNorm = 4.0 * std::numbers::sqrt2;
constexpr double kLow[4] = {(1 + kSqrt3) / kNorm, (3 + kSqrt3) / kNorm,
                            (3 - kSqrt3) / kNorm, (1 - kSqrt3) / kNorm};
constexpr double kHigh[4] = {kLow[3], -kLow[2], kLow[1], -kLow[0]};

// Length after symmetric padding to a multiple of 2^(levels-1) and mirroring,
// so the periodic transform sees a symmetric signal at both ends.
int ExtendedLength(int n, int levels) {
  const int block = 1 << (levels - 1);
  return 2 * (((n + block - 1) / block) * block);
}

int ExtendedSource(int i, int extended, int n) {
  const int half = extended / 2;
  return ReflectIndex(i < half ? i : extended - 1 - i, n);
}

void TransformRows(std::vector<double>& data, int stride, int rows, int cols,
                   bool forward, std::vector<double>& line,
                   std::vector<double>& scratch) {
  line.resize(cols);
  scratch.resize(cols);
  for (int r = 0; r < rows; ++r) {
    double* row = &data[static_cast<std::size_t>(r) * stride];
    std::copy(row, row + cols, line.begin());
    if (forward) {
      Daub4Forward(line, scratch);
    } else {
      Daub4Inverse(line, scratch);
    }
    std::copy(scratch.begin(), scratch.end(), row);
  }
}

void TransformCols(std::vector<double>& data, int stride, int rows, int cols,
                   bool forward, std::vector<double>& line,
                   std::vector<double>& scratch) {
  line.resize(rows);
  scratch.resize(rows);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      line[r] = data[static_cast<std::size_t>(r) * stride + c];
    }
    if (forward) {
      Daub4Forward(line, scratch);
    } else {
      Daub4Inverse(line, scratch);
    }
    for (int r = 0; r < rows; ++r) {
      data[static_cast<std::size_t>(r) * stride + c] = scratch[r];
    }
  }
}

}  // namespace

void Daub4Forward(std::span<const double> input, std::span<double> output) {
  const std::size_t n = input.size();
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double approx = 0.0;
    double detail = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double x = input[(2 * i + k) % n];
      approx += kLow[k] * x;
      detail += kHigh[k] * x;
    }
    output[i] = approx;
    output[half + i] = detail;
  }
}

void Daub4Inverse(std::span<const double> input, std::span<double> output) {
  const std::size_t n = input.size();
  const std::size_t half = n / 2;
  std::fill(output.begin(), output.end(), 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      output[(2 * i + k) % n] +=
          kLow[k] * input[i] + kHigh[k] * input[half + i];
    }
  }
}

double VisuShrinkThreshold(double sigma, std::size_t n) {
  if (n < 1) throw DataError("VisuShrink needs at least one sample");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double EstimateNoiseSigma(std::span<const double> finest_diagonal) {
  if (finest_diagonal.empty()) return 0.0;
  std::vector<double> magnitudes(finest_diagonal.size());
  std::transform(finest_diagonal.begin(), finest_diagonal.end(),
                 magnitudes.begin(), [](double v) { return std::abs(v); });
  const std::size_t mid = magnitudes.size() / 2;
  std::nth_element(magnitudes.begin(), magnitudes.begin() + mid,
                   magnitudes.end());
  double median = magnitudes[mid];
  if (magnitudes.size() % 2 == 0) {
    const double lower =
        *std::max_element(magnitudes.begin(), magnitudes.begin() + mid);
    median = 0.5 * (lower + median);
  }
  return median / 0.6745;
}

double SoftThreshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

WaveletDenoiseResult WaveletDenoiseDetailed(const RangeImage& image,
                                            const FilterParams& params) {
  params.Validate();
  const int rows = image.rows();
  const int cols = image.cols();
  const int levels = params.wavelet_levels;
  const int ext_rows = ExtendedLength(rows, levels);
  const int ext_cols = ExtendedLength(cols, levels);

  std::vector<double> data(static_cast<std::size_t>(ext_rows) * ext_cols);
  for (int r = 0; r < ext_rows; ++r) {
    const int src_r = ExtendedSource(r, ext_rows, rows);
    for (int c = 0; c < ext_cols; ++c) {
      data[static_cast<std::size_t>(r) * ext_cols + c] =
          image(src_r, ExtendedSource(c, ext_cols, cols));
    }
  }

  std::vector<double> line;
  std::vector<double> scratch;
  for (int level = 0; level < levels; ++level) {
    const int h = ext_rows >> level;
    const int w = ext_cols >> level;
    TransformRows(data, ext_cols, h, w, true, line, scratch);
    TransformCols(data, ext_cols, h, w, true, line, scratch);
  }

  std::vector<double> diagonal;
  diagonal.reserve(static_cast<std::size_t>(ext_rows / 2) * (ext_cols / 2));
  for (int r = ext_rows / 2; r < ext_rows; ++r) {
    for (int c = ext_cols / 2; c < ext_cols; ++c) {
      diagonal.push_back(data[static_cast<std::size_t>(r) * ext_cols + c]);
    }
  }
  WaveletDenoiseResult result;
  result.sigma = EstimateNoiseSigma(diagonal);
  result.threshold = VisuShrinkThreshold(result.sigma, image.size());

  const int approx_rows = ext_rows >> levels;
  const int approx_cols = ext_cols >> levels;
  for (int r = 0; r < ext_rows; ++r) {
    for (int c = 0; c < ext_cols; ++c) {
      if (r < approx_rows && c < approx_cols) continue;
      double& v = data[static_cast<std::size_t>(r) * ext_cols + c];
      v = SoftThreshold(v, result.threshold);
    }
  }

  for (int level = levels - 1; level >= 0; --level) {
    const int h = ext_rows >> level;
    const int w = ext_cols >> level;
    TransformCols(data, ext_cols, h, w, false, line, scratch);
    TransformRows(data, ext_cols, h, w, false, line, scratch);
  }

  result.image = RangeImage(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      result.image(r, c) =
          QuantizePixel(data[static_cast<std::size_t>(r) * ext_cols + c]);
    }
  }
  return result;
}

RangeImage WaveletDenoise(const RangeImage& image, const FilterParams& params) {
  return WaveletDenoiseDetailed(image, params).image;
}

}  // namespace sonarmap
