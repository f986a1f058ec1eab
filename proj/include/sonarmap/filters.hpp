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

#ifndef SONARMAP_FILTERS_HPP_
#define SONARMAP_FILTERS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sonarmap/image.hpp"

namespace sonarmap {

// Tuning knobs for the despeckle filters. All window, convolution and
// transform operations use symmetric (reflective) boundary extension.
struct FilterParams {
  int window_radius = 3;
  double frost_damping = 2.0;
  // Lower coefficient-of-variation threshold of the enhanced Lee filter.
  // Unset means "use the speckle sigma", see ResolveLeeThresholds().
  std::optional<double> lee_cu;
  // Upper threshold; unset means sqrt(3) * lee_cu.
  std::optional<double> lee_cmax;
  double lee_damping = 1.0;
  int diffusion_iterations = 15;
  double diffusion_kappa = 30.0;
  double diffusion_lambda = 0.25;
  int wavelet_levels = 3;
  double unsharp_amount = 1.0;
  double unsharp_radius = 1.5;  // Gaussian sigma in pixels

  void Validate() const;

  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

struct LeeThresholds {
  double cu;
  double cmax;
};

// Falls back to cu = speckle_sigma (or 0.25 when unknown or zero) and
// cmax = sqrt(3) * cu.
LeeThresholds ResolveLeeThresholds(const FilterParams& params,
                                   std::optional<double> speckle_sigma);

// Mirror index into [0, n) with half-sample symmetry: -1 -> 0, n -> n - 1.
int ReflectIndex(int i, int n);

// Exponentially damped Frost filter: weights exp(-damping * C^2 * d) with
// C the local coefficient of variation and d the Chebyshev distance from the
// window center. A window with zero mean passes the input pixel through.
RangeImage FrostFilter(const RangeImage& image, const FilterParams& params);

// Lopes' enhanced Lee filter with two coefficient-of-variation thresholds.
// `speckle_sigma` feeds the default lower threshold.
RangeImage EnhancedLeeFilter(const RangeImage& image,
                             const FilterParams& params,
                             std::optional<double> speckle_sigma = {});

// Blend factor used in the heterogeneous regime of the enhanced Lee filter:
// out = mean * W + center * (1 - W).
double EnhancedLeeWeight(double variation, const LeeThresholds& thresholds,
                         double damping);

// Perona-Malik diffusion with conductance exp(-(|grad|/kappa)^2) over the
// 4-neighborhood.
FloatImage AnisotropicDiffusion(const FloatImage& image,
                                const FilterParams& params);
RangeImage AnisotropicDiffusion(const RangeImage& image,
                                const FilterParams& params);

// Universal threshold sigma * sqrt(2 ln n).
double VisuShrinkThreshold(double sigma, std::size_t n);
// Robust noise estimate median(|d|) / 0.6745 from the finest diagonal band.
double EstimateNoiseSigma(std::span<const double> finest_diagonal);
double SoftThreshold(double value, double threshold);

// Daubechies-4 periodic DWT of one line (length must be even). Output holds
// approximations in the first half, details in the second.
void Daub4Forward(std::span<const double> input, std::span<double> output);
void Daub4Inverse(std::span<const double> input, std::span<double> output);

struct WaveletDenoiseResult {
  RangeImage image;
  double sigma = 0.0;      // estimated noise std
  double threshold = 0.0;  // soft threshold applied to all detail bands
};

// VisuShrink soft thresholding in an orthogonal Daubechies-4 basis.
WaveletDenoiseResult WaveletDenoiseDetailed(const RangeImage& image,
                                            const FilterParams& params);
RangeImage WaveletDenoise(const RangeImage& image, const FilterParams& params);

// Separable Gaussian blur, sigma in pixels, kernel radius ceil(3 sigma).
FloatImage GaussianBlur(const FloatImage& image, double sigma);
// out = in + amount * (in - blur(in)).
FloatImage UnsharpMask(const FloatImage& image, double amount, double radius);

// Zeroes pixels outside the mask, keeps raw values inside, then sharpens the
// segmented image with an unsharp mask. Throws DataError on a size mismatch.
RangeImage MaskApplyFilter(const RangeImage& raw, const BinaryMask& mask,
                           const FilterParams& params);

// CDF remapping over 256 levels, normalized so the darkest occupied level
// maps to 0 and the brightest to 255. Constant images are returned as is.
RangeImage HistogramEqualize(const RangeImage& image);

enum class FilterKind { kFrost, kEnhancedLee, kAnisotropicDiffusion, kWavelet,
                        kMask };

// CLI-facing names: frost, lee-enhanced, anisodiff, wavelet, mask.
std::string_view FilterName(FilterKind kind);
std::optional<FilterKind> ParseFilterName(std::string_view name);
std::vector<FilterKind> AllFilters();
std::vector<FilterKind> ClassicalFilters();

// Runs one filter. `mask` is required for FilterKind::kMask.
RangeImage ApplyFilter(FilterKind kind, const RangeImage& raw,
                       const FilterParams& params, const BinaryMask* mask,
                       std::optional<double> speckle_sigma = {});

// Full mapping-side preprocessing: the filter output (mask path includes the
// unsharp step) followed by histogram equalization.
RangeImage PrepareForMapping(FilterKind kind, const RangeImage& raw,
                             const FilterParams& params, const BinaryMask* mask,
                             std::optional<double> speckle_sigma = {});

}  // namespace sonarmap

#endif  // SONARMAP_FILTERS_HPP_
