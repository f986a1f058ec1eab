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
namespace {

// Perona-Malik flux across one edge; g(d) * d with g(d) = exp(-(d/kappa)^2).
inline double EdgeFlux(double difference, double inv_kappa) {
  if (difference == 0.0) return 0.0;
  const double s = difference * inv_kappa;
  return std::exp(-(s * s)) * difference;
}

}  // namespace

FloatImage AnisotropicDiffusion(const FloatImage& image,
                                const FilterParams& params) {
  params.Validate();
  const int rows = image.rows();
  const int cols = image.cols();
  const double lambda = params.diffusion_lambda;
  const double inv_kappa = 1.0 / params.diffusion_kappa;

  FloatImage current = image;
  // east[r][c]: flux from (r, c + 1) into (r, c); south[r][c]: from (r + 1, c).
  // Reflected neighbors outside the image equal the pixel itself, so border
  // edges carry no flux.
  FloatImage east(rows, cols);
  FloatImage south(rows, cols);
  for (int it = 0; it < params.diffusion_iterations; ++it) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c + 1 < cols; ++c) {
        east(r, c) = EdgeFlux(current(r, c + 1) - current(r, c), inv_kappa);
      }
    }
    for (int r = 0; r + 1 < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        south(r, c) = EdgeFlux(current(r + 1, c) - current(r, c), inv_kappa);
      }
    }
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const double north_flux = r > 0 ? -south(r - 1, c) : 0.0;
        const double south_flux = r + 1 < rows ? south(r, c) : 0.0;
        const double east_flux = c + 1 < cols ? east(r, c) : 0.0;
        const double west_flux = c > 0 ? -east(r, c - 1) : 0.0;
        current(r, c) +=
            lambda * (north_flux + south_flux + east_flux + west_flux);
      }
    }
  }
  return current;
}

RangeImage AnisotropicDiffusion(const RangeImage& image,
                                const FilterParams& params) {
  return Quantize(AnisotropicDiffusion(ToFloat(image), params));
}

}  // namespace sonarmap
