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

#include <cmath>
#include <string>
#include <vector>

#include "sonarmap/error.hpp"
#include "sonarmap/filters.hpp"

namespace sonarmap {

FloatImage GaussianBlur(const FloatImage& image, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    total += kernel[i + radius];
  }
  for (double& k : kernel) k /= total;

  const int rows = image.rows();
  const int cols = image.cols();
  FloatImage horizontal(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * image(r, ReflectIndex(c + i, cols));
      }
      horizontal(r, c) = acc;
    }
  }
  FloatImage out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * horizontal(ReflectIndex(r + i, rows), c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

FloatImage UnsharpMask(const FloatImage& image, double amount, double radius) {
  if (amount == 0.0) return image;
  const FloatImage blurred = GaussianBlur(image, radius);
  FloatImage out(image.rows(), image.cols());
  auto src = image.pixels();
  auto blur = blurred.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] + amount * (src[i] - blur[i]);
  }
  return out;
}

RangeImage MaskApplyFilter(const RangeImage& raw, const BinaryMask& mask,
                           const FilterParams& params) {
  params.Validate();
  if (raw.rows() != mask.rows() || raw.cols() != mask.cols()) {
    throw DataError("mask is " + std::to_string(mask.cols()) + "x" +
                    std::to_string(mask.rows()) + " but the image is " +
                    std::to_string(raw.cols()) + "x" +
                    std::to_string(raw.rows()));
  }
  FloatImage segmented(raw.rows(), raw.cols());
  for (int r = 0; r < raw.rows(); ++r) {
    for (int c = 0; c < raw.cols(); ++c) {
      segmented(r, c) = mask.keep(r, c) ? raw(r, c) : 0.0;
    }
  }
  return Quantize(
      UnsharpMask(segmented, params.unsharp_amount, params.unsharp_radius));
}

}  // namespace sonarmap
