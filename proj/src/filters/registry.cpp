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

#include "sonarmap/error.hpp"
#include "sonarmap/filters.hpp"

namespace sonarmap {

std::string_view FilterName(FilterKind kind) {
  switch (kind) {
    case FilterKind::kFrost:
      return "frost";
    case FilterKind::kEnhancedLee:
      return "lee-enhanced";
    case FilterKind::kAnisotropicDiffusion:
      return "anisodiff";
    case FilterKind::kWavelet:
      return "wavelet";
    case FilterKind::kMask:
      return "mask";
  }
  return "unknown";
}

std::optional<FilterKind> ParseFilterName(std::string_view name) {
  for (const FilterKind kind : AllFilters()) {
    if (FilterName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<FilterKind> AllFilters() {
  return {FilterKind::kFrost, FilterKind::kEnhancedLee,
          FilterKind::kAnisotropicDiffusion, FilterKind::kWavelet,
          FilterKind::kMask};
}

std::vector<FilterKind> ClassicalFilters() {
  return {FilterKind::kFrost, FilterKind::kEnhancedLee,
          FilterKind::kAnisotropicDiffusion, FilterKind::kWavelet};
}

RangeImage ApplyFilter(FilterKind kind, const RangeImage& raw,
                       const FilterParams& params, const BinaryMask* mask,
                       std::optional<double> speckle_sigma) {
  switch (kind) {
    case FilterKind::kFrost:
      return FrostFilter(raw, params);
    case FilterKind::kEnhancedLee:
      return EnhancedLeeFilter(raw, params, speckle_sigma);
    case FilterKind::kAnisotropicDiffusion:
      return AnisotropicDiffusion(raw, params);
    case FilterKind::kWavelet:
      return WaveletDenoise(raw, params);
    case FilterKind::kMask:
      if (mask == nullptr) throw DataError("the mask filter needs a mask");
      return MaskApplyFilter(raw, *mask, params);
  }
  throw DataError("unknown filter");
}

RangeImage PrepareForMapping(FilterKind kind, const RangeImage& raw,
                             const FilterParams& params, const BinaryMask* mask,
                             std::optional<double> speckle_sigma) {
  return HistogramEqualize(ApplyFilter(kind, raw, params, mask, speckle_sigma));
}

}  // namespace sonarmap
