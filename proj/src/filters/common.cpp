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

#include "sonarmap/error.hpp"
#include "sonarmap/filters.hpp"

namespace sonarmap {

void FilterParams::Validate() const {
  if (window_radius < 1) throw DataError("window_radius must be >= 1");
  if (!(frost_damping >= 0.0)) throw DataError("frost_damping must be >= 0");
  if (!(diffusion_lambda > 0.0 && diffusion_lambda <= 0.25)) {
    throw DataError("diffusion_lambda must lie in (0, 0.25]");
  }
  if (diffusion_iterations < 0) {
    throw DataError("diffusion_iterations must be >= 0");
  }
  if (!(diffusion_kappa > 0.0)) throw DataError("diffusion_kappa must be > 0");
  if (wavelet_levels < 1) throw DataError("wavelet_levels must be >= 1");
  if (!(unsharp_amount >= 0.0)) throw DataError("unsharp_amount must be >= 0");
  if (!(unsharp_radius > 0.0)) throw DataError("unsharp_radius must be > 0");
  if (lee_cu && lee_cmax && !(*lee_cu < *lee_cmax)) {
    throw DataError("lee_cu must be below lee_cmax");
  }
  if (lee_cu && !(*lee_cu >= 0.0)) throw DataError("lee_cu must be >= 0");
  if (!(lee_damping > 0.0)) throw DataError("lee_damping must be > 0");
}

LeeThresholds ResolveLeeThresholds(const FilterParams& params,
                                   std::optional<double> speckle_sigma) {
  if (speckle_sigma && *speckle_sigma <= 0.0) speckle_sigma.reset();
  const double cu = params.lee_cu.value_or(speckle_sigma.value_or(0.25));
  const double cmax = params.lee_cmax.value_or(std::sqrt(3.0) * cu);
  if (!(cu < cmax)) throw DataError("lee_cu must be below lee_cmax");
  return {cu, cmax};
}

int ReflectIndex(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

}  // namespace sonarmap
