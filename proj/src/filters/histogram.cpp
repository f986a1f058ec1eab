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

#include <array>
#include <cmath>
#include <cstdint>

#include "sonarmap/filters.hpp"

namespace sonarmap {

RangeImage HistogramEqualize(const RangeImage& image) {
  std::array<std::size_t, 256> histogram{};
  for (const std::uint8_t v : image.pixels()) ++histogram[v];

  std::size_t darkest_count = 0;
  for (const std::size_t count : histogram) {
    if (count > 0) {
      darkest_count = count;
      break;
    }
  }
  const std::size_t total = image.size();
  if (total == 0 || darkest_count == total) return image;

  std::array<std::uint8_t, 256> lut{};
  std::size_t cdf = 0;
  const double span = static_cast<double>(total - darkest_count);
  for (int level = 0; level < 256; ++level) {
    cdf += histogram[level];
    if (cdf == 0) continue;
    lut[level] = static_cast<std::uint8_t>(
        std::lround(255.0 * static_cast<double>(cdf - darkest_count) / span));
  }

  RangeImage out(image.rows(), image.cols());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

}  // namespace sonarmap
