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

#ifndef SONARMAP_EVALUATION_HPP_
#define SONARMAP_EVALUATION_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sonarmap/filters.hpp"
#include "sonarmap/image.hpp"
#include "sonarmap/occupancy.hpp"
#include "sonarmap/simulator.hpp"

namespace sonarmap {

// 10 log10(255^2 / MSE) over all pixels. Identical images give +infinity.
// Throws DataError on a size mismatch.
double Psnr(const RangeImage& reference, const RangeImage& candidate);

struct PsnrResult {
  std::string filter;
  std::vector<double> per_frame;
  double mean = 0.0;
};

// PSNR of every filter's output against the clean frames. The mask filter
// uses `masks` when given, otherwise the corpus ground truth.
std::vector<PsnrResult> EvaluatePsnr(
    const Corpus& corpus, const std::vector<FilterKind>& filters,
    const FilterParams& params,
    const std::vector<BinaryMask>* masks = nullptr);

// Free-positive convention: a false positive is a truly occupied cell with
// l > 0, a false negative a truly free cell with l < 0. Unknown cells
// (l == 0) never enter either population.
struct OccupancyConfusion {
  std::string filter;
  int threshold = 0;
  double false_positive_rate = 0.0;
  double false_negative_rate = 0.0;
  std::size_t occupied_evaluated = 0;
  std::size_t free_evaluated = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

// A cell is truly occupied when its center lies inside an obstacle. A rate
// whose population is empty is reported as 0; if both are empty the rates
// are undefined and DataError is thrown.
OccupancyConfusion ComputeConfusion(const OccupancyGrid& map,
                                    const Scene& truth);

// Axis-aligned grid covering every sensor frustum along the trajectory.
OccupancyGrid GridForTrajectory(const std::vector<Pose>& poses,
                                const SonarConfig& config, double resolution);

// Builds a map from preprocessed (filtered + equalized) frames.
OccupancyGrid BuildMap(const std::vector<RangeImage>& frames,
                       const std::vector<Pose>& poses,
                       const SonarConfig& config,
                       const SensorModelParams& sensor, double resolution,
                       IntegrationStats* stats = nullptr);

struct SweepRow {
  std::string filter;
  int threshold = 0;
  double false_positive_rate = 0.0;  // averaged over scenes
  double false_negative_rate = 0.0;
  int scenes = 0;
};

struct SweepOptions {
  std::vector<int> thresholds;  // e.g. 0, 5, ..., 60
  double resolution = 0.05;
  SensorModelParams sensor;
  FilterParams filter;
  // Optional external masks per corpus for the mask filter.
  const std::vector<std::vector<BinaryMask>>* masks = nullptr;
};

// Thresholds lo, lo + step, ..., up to hi inclusive. Throws DataError if the
// range leaves [0, 255] or step < 1.
std::vector<int> ThresholdRange(int lo, int hi, int step);

// One row per (filter, threshold), FPR/FNR averaged across corpora.
std::vector<SweepRow> ThresholdSweep(const std::vector<const Corpus*>& corpora,
                                     const std::vector<FilterKind>& filters,
                                     const SweepOptions& options);

struct RuntimeRow {
  std::string filter;
  std::size_t frames = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

// Single-threaded wall-clock time per frame of each filter.
std::vector<RuntimeRow> BenchmarkRuntime(const std::vector<RangeImage>& frames,
                                         const std::vector<BinaryMask>& masks,
                                         const std::vector<FilterKind>& filters,
                                         const FilterParams& params,
                                         std::optional<double> speckle_sigma);

// CSV writers with stable column headers.
struct ScenePsnr {
  std::string scene;
  std::vector<std::string> frames;
  std::vector<PsnrResult> results;
};

void WritePsnrCsv(const std::filesystem::path& path,
                  const std::vector<ScenePsnr>& scenes);
void WritePsnrSummaryCsv(const std::filesystem::path& path,
                         const std::vector<ScenePsnr>& scenes);
void WriteSweepCsv(const std::filesystem::path& path,
                   const std::vector<SweepRow>& rows);
void WriteRuntimeCsv(const std::filesystem::path& path,
                     const std::vector<RuntimeRow>& rows);

}  // namespace sonarmap

#endif  // SONARMAP_EVALUATION_HPP_
