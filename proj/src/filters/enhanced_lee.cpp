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
#include <vector>

#include "sonarmap/filters.hpp"

namespace sonarmap {

double EnhancedLeeWeight(double variation, const LeeThresholds& thresholds,
                         double damping) {
  return std::exp(-damping * (variation - thresholds.cu) /
                  (thresholds.cmax - variation));
}

RangeImage EnhancedLeeFilter(const RangeImage& image,
                             const FilterParams& params,
                             std::optional<double> speckle_sigma) {
  params.Validate();
  const LeeThresholds thresholds = ResolveLeeThresholds(params, speckle_sigma);
  const int rows = image.rows();
  const int cols = image.cols();
  const int radius = params.window_radius;
  const double count = (2.0 * radius + 1) * (2.0 * radius + 1);

  // Column-reflected rows are gathered once; rows are reflected on lookup.
  const int padded_cols = cols + 2 * radius;
  std::vector<double> padded(static_cast<std::size_t>(rows) * padded_cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < padded_cols; ++c) {
      padded[static_cast<std::size_t>(r) * padded_cols + c] =
          image(r, ReflectIndex(c - radius, cols));
    }
  }

  RangeImage out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const double* row =
            &padded[static_cast<std::size_t>(ReflectIndex(r + dr, rows)) *
                        padded_cols +
                    c + radius];
        for (int dc = -radius; dc <= radius; ++dc) {
          sum += row[dc];
          sum_sq += row[dc] * row[dc];
        }
      }
      const double mean = sum / count;
      const double center = image(r, c);
      if (mean <= 0.0) {
        out(r, c) = 0;
        continue;
      }
      const double variance = std::max(0.0, sum_sq / count - mean * mean);
      const double variation = std::sqrt(variance) / mean;
      double value;
      if (variation <= thresholds.cu) {
        value = mean;
      } else if (variation < thresholds.cmax) {
        const double w =
            EnhancedLeeWeight(variation, thresholds, params.lee_damping);
        value = mean * w + center * (1.0 - w);
      } else {
        value = center;
      }
      out(r, c) = QuantizePixel(value);
    }
  }
  return out;
}

}  // namespace sonarmap
