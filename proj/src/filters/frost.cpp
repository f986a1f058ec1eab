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
#include <cstdlib>
#include <vector>

#include "sonarmap/filters.hpp"

namespace sonarmap {

RangeImage FrostFilter(const RangeImage& image, const FilterParams& params) {
  params.Validate();
  const int rows = image.rows();
  const int cols = image.cols();
  const int radius = params.window_radius;
  const int width = 2 * radius + 1;
  const double count = static_cast<double>(width) * width;

  // Reflect-padded copy so the window loops need no bounds handling.
  const int padded_cols = cols + 2 * radius;
  std::vector<double> padded(static_cast<std::size_t>(rows + 2 * radius) *
                             padded_cols);
  for (int r = 0; r < rows + 2 * radius; ++r) {
    const int src_r = ReflectIndex(r - radius, rows);
    for (int c = 0; c < padded_cols; ++c) {
      padded[static_cast<std::size_t>(r) * padded_cols + c] =
          image(src_r, ReflectIndex(c - radius, cols));
    }
  }

  // Number of window cells at each Chebyshev distance.
  std::vector<double> ring_count(radius + 1);
  ring_count[0] = 1.0;
  for (int d = 1; d <= radius; ++d) ring_count[d] = 8.0 * d;

  std::vector<double> ring_sum(radius + 1);
  RangeImage out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double sum = 0.0;
      double sum_sq = 0.0;
      std::fill(ring_sum.begin(), ring_sum.end(), 0.0);
      for (int dr = -radius; dr <= radius; ++dr) {
        const double* row =
            &padded[static_cast<std::size_t>(r + radius + dr) * padded_cols +
                    c + radius];
        for (int dc = -radius; dc <= radius; ++dc) {
          const double v = row[dc];
          sum += v;
          sum_sq += v * v;
          ring_sum[std::max(std::abs(dr), std::abs(dc))] += v;
        }
      }
      const double mean = sum / count;
      if (mean <= 0.0) {
        out(r, c) = image(r, c);
        continue;
      }
      const double variance = std::max(0.0, sum_sq / count - mean * mean);
      const double variation_sq = variance / (mean * mean);
      const double alpha = params.frost_damping * variation_sq;
      double weighted = 0.0;
      double norm = 0.0;
      for (int d = 0; d <= radius; ++d) {
        const double w = std::exp(-alpha * d);
        weighted += w * ring_sum[d];
        norm += w * ring_count[d];
      }
      out(r, c) = QuantizePixel(weighted / norm);
    }
  }
  return out;
}

}  // namespace sonarmap
