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

#ifndef SONARMAP_TESTS_ORACLES_ORACLES_HPP_
#define SONARMAP_TESTS_ORACLES_ORACLES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "sonarmap/filters.hpp"
#include "sonarmap/geometry.hpp"
#include "sonarmap/image.hpp"
#include "sonarmap/occupancy.hpp"

// Deliberately naive reference implementations. They share no code with the
// library beyond the image container and its 8-bit quantization.
namespace sonarmap::oracle {

// Half-sample symmetric index written out case by case.
int Mirror(int i, int n);

RangeImage NaiveFrost(const RangeImage& image, int radius, double damping);

struct LeeRegimes {
  int homogeneous = 0;
  int heterogeneous = 0;
  int point_target = 0;
};
RangeImage NaiveEnhancedLee(const RangeImage& image, int radius, double cu,
                            double cmax, double damping,
                            LeeRegimes* regimes = nullptr);

RangeImage NaiveDiffusion(const RangeImage& image, int iterations,
                          double kappa, double lambda);

// Dense n x n orthonormal D4 analysis matrix with periodic wrap.
std::vector<std::vector<double>> Daub4Matrix(int n);

struct NaiveWaveletResult {
  RangeImage image;
  double sigma = 0.0;
  double threshold = 0.0;
};
NaiveWaveletResult NaiveWavelet(const RangeImage& image, int levels);

// Minor coordinates sampled from the parametric line and rounded half down.
std::vector<VoxelIndex> ParametricLine(const VoxelIndex& a,
                                       const VoxelIndex& b);

// Images with homogeneous patches, speckle, edges and empty regions.
RangeImage RandomSpeckledImage(std::mt19937_64& rng, int rows, int cols);

}  // namespace sonarmap::oracle

#endif  // SONARMAP_TESTS_ORACLES_ORACLES_HPP_
