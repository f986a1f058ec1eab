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

#include "sonarmap/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "sonarmap/error.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

std::string FormatMetric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return internal::FormatDouble(v);
}

std::ofstream OpenCsv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

double Psnr(const RangeImage& reference, const RangeImage& candidate) {
  if (!reference.SameShape(candidate)) {
    throw DataError("PSNR needs images of equal size");
  }
  if (reference.empty()) throw DataError("PSNR of empty images");
  auto a = reference.pixels();
  auto b = candidate.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::vector<PsnrResult> EvaluatePsnr(const Corpus& corpus,
                                     const std::vector<FilterKind>& filters,
                                     const FilterParams& params,
                                     const std::vector<BinaryMask>* masks) {
  const std::vector<BinaryMask>& used = masks != nullptr ? *masks : corpus.masks;
  if (used.size() != corpus.noisy.size()) {
    throw DataError("mask count does not match frame count");
  }
  std::vector<PsnrResult> results;
  for (const FilterKind kind : filters) {
    PsnrResult result;
    result.filter = std::string(FilterName(kind));
    for (std::size_t i = 0; i < corpus.noisy.size(); ++i) {
      const RangeImage filtered = ApplyFilter(kind, corpus.noisy[i], params,
                                              &used[i],
                                              corpus.manifest.noise.sigma);
      result.per_frame.push_back(Psnr(corpus.clean[i], filtered));
    }
    if (!result.per_frame.empty()) {
      result.mean = std::accumulate(result.per_frame.begin(),
                                    result.per_frame.end(), 0.0) /
                    static_cast<double>(result.per_frame.size());
    }
    results.push_back(std::move(result));
  }
  return results;
}

OccupancyConfusion ComputeConfusion(const OccupancyGrid& map,
                                    const Scene& truth) {
  OccupancyConfusion confusion;
  const auto cells = map.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double l = cells[i];
    if (l == 0.0) continue;
    const bool truly_occupied = truth.Occupied(map.CenterOf(map.Unflatten(i)));
    if (truly_occupied) {
      ++confusion.occupied_evaluated;
      if (l > 0.0) ++confusion.false_positives;
    } else {
      ++confusion.free_evaluated;
      if (l < 0.0) ++confusion.false_negatives;
    }
  }
  if (confusion.occupied_evaluated == 0 && confusion.free_evaluated == 0) {
    throw DataError("no classified cells; FPR and FNR are undefined");
  }
  if (confusion.occupied_evaluated > 0) {
    confusion.false_positive_rate =
        static_cast<double>(confusion.false_positives) /
        static_cast<double>(confusion.occupied_evaluated);
  }
  if (confusion.free_evaluated > 0) {
    confusion.false_negative_rate =
        static_cast<double>(confusion.false_negatives) /
        static_cast<double>(confusion.free_evaluated);
  }
  return confusion;
}

OccupancyGrid GridForTrajectory(const std::vector<Pose>& poses,
                                const SonarConfig& config, double resolution) {
  if (poses.empty()) {
    return OccupancyGrid::Covering({0, 0, 0}, {resolution, resolution,
                                               resolution},
                                   resolution);
  }
  CartesianPoint lo{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  CartesianPoint hi{-lo.x, -lo.y, -lo.z};
  const auto extend = [&](const CartesianPoint& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  };
  // Sampling the frustum boundary densely enough to include arc bulges.
  constexpr int kSamples = 8;
  for (const Pose& pose : poses) {
    extend(pose.translation);
    for (int i = 0; i <= kSamples; ++i) {
      for (int j = 0; j <= kSamples; ++j) {
        SphericalPoint p;
        p.bearing = config.bearing_min +
                    (config.bearing_max - config.bearing_min) * i / kSamples;
        p.elevation = config.elevation_min +
                      (config.elevation_max - config.elevation_min) * j /
                          kSamples;
        p.range = config.range_max;
        extend(TransformToWorld(pose, SphericalToCartesian(p)));
        p.range = config.range_min;
        extend(TransformToWorld(pose, SphericalToCartesian(p)));
      }
    }
  }
  const CartesianPoint margin{resolution, resolution, resolution};
  return OccupancyGrid::Covering(lo - margin, hi + margin, resolution);
}

OccupancyGrid BuildMap(const std::vector<RangeImage>& frames,
                       const std::vector<Pose>& poses,
                       const SonarConfig& config,
                       const SensorModelParams& sensor, double resolution,
                       IntegrationStats* stats) {
  if (frames.size() != poses.size()) {
    throw DataError(std::to_string(frames.size()) + " frames but " +
                    std::to_string(poses.size()) + " poses");
  }
  OccupancyGrid grid = GridForTrajectory(poses, config, resolution);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    IntegrateFrame(grid, frames[i], poses[i], config, sensor, stats);
  }
  return grid;
}

std::vector<int> ThresholdRange(int lo, int hi, int step) {
  if (lo < 0 || hi > 255 || lo > hi || step < 1) {
    throw DataError("threshold range must satisfy 0 <= lo <= hi <= 255, "
                    "step >= 1");
  }
  std::vector<int> out;
  for (int t = lo; t <= hi; t += step) out.push_back(t);
  return out;
}

std::vector<SweepRow> ThresholdSweep(const std::vector<const Corpus*>& corpora,
                                     const std::vector<FilterKind>& filters,
                                     const SweepOptions& options) {
  if (options.masks != nullptr && options.masks->size() != corpora.size()) {
    throw DataError("external masks must be given for every corpus");
  }
  std::vector<SweepRow> rows;
  for (const FilterKind kind : filters) {
    std::vector<SweepRow> filter_rows;
    for (const int t : options.thresholds) {
      filter_rows.push_back({std::string(FilterName(kind)), t, 0.0, 0.0, 0});
    }
    for (std::size_t s = 0; s < corpora.size(); ++s) {
      const Corpus& corpus = *corpora[s];
      const std::vector<BinaryMask>& masks =
          options.masks != nullptr ? (*options.masks)[s] : corpus.masks;
      std::vector<RangeImage> prepared;
      prepared.reserve(corpus.noisy.size());
      for (std::size_t i = 0; i < corpus.noisy.size(); ++i) {
        prepared.push_back(PrepareForMapping(kind, corpus.noisy[i],
                                             options.filter, &masks[i],
                                             corpus.manifest.noise.sigma));
      }
      for (std::size_t ti = 0; ti < options.thresholds.size(); ++ti) {
        SensorModelParams sensor = options.sensor;
        sensor.threshold = options.thresholds[ti];
        const OccupancyGrid map =
            BuildMap(prepared, corpus.poses, corpus.manifest.config, sensor,
                     options.resolution);
        const OccupancyConfusion confusion =
            ComputeConfusion(map, corpus.scene);
        filter_rows[ti].false_positive_rate += confusion.false_positive_rate;
        filter_rows[ti].false_negative_rate += confusion.false_negative_rate;
        ++filter_rows[ti].scenes;
      }
    }
    for (SweepRow& row : filter_rows) {
      if (row.scenes > 0) {
        row.false_positive_rate /= row.scenes;
        row.false_negative_rate /= row.scenes;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<RuntimeRow> BenchmarkRuntime(const std::vector<RangeImage>& frames,
                                         const std::vector<BinaryMask>& masks,
                                         const std::vector<FilterKind>& filters,
                                         const FilterParams& params,
                                         std::optional<double> speckle_sigma) {
  if (masks.size() != frames.size()) {
    throw DataError("benchmark needs one mask per frame");
  }
  using Clock = std::chrono::steady_clock;
  std::vector<RuntimeRow> rows;
  for (const FilterKind kind : filters) {
    std::vector<double> seconds;
    seconds.reserve(frames.size());
    std::size_t sink = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto start = Clock::now();
      const RangeImage out =
          ApplyFilter(kind, frames[i], params, &masks[i], speckle_sigma);
      const auto stop = Clock::now();
      sink += out.pixels()[0];
      seconds.push_back(std::chrono::duration<double>(stop - start).count());
    }
    RuntimeRow row;
    row.filter = std::string(FilterName(kind));
    row.frames = frames.size();
    if (!seconds.empty()) {
      row.mean_seconds = std::accumulate(seconds.begin(), seconds.end(), 0.0) /
                         static_cast<double>(seconds.size());
      double var = 0.0;
      for (const double s : seconds) {
        var += (s - row.mean_seconds) * (s - row.mean_seconds);
      }
      row.std_seconds = std::sqrt(var / static_cast<double>(seconds.size()));
    }
    // Keeps the filtered outputs observable so the calls are not elided.
    if (sink == std::numeric_limits<std::size_t>::max()) row.frames = 0;
    rows.push_back(row);
  }
  return rows;
}

void WritePsnrCsv(const std::filesystem::path& path,
                  const std::vector<ScenePsnr>& scenes) {
  std::ofstream out = OpenCsv(path);
  out << "scene,frame,filter,psnr_db\n";
  for (const ScenePsnr& scene : scenes) {
    for (const PsnrResult& r : scene.results) {
      for (std::size_t i = 0; i < r.per_frame.size(); ++i) {
        out << scene.scene << ','
            << (i < scene.frames.size() ? scene.frames[i] : std::to_string(i))
            << ',' << r.filter << ',' << FormatMetric(r.per_frame[i]) << '\n';
      }
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void WritePsnrSummaryCsv(const std::filesystem::path& path,
                         const std::vector<ScenePsnr>& scenes) {
  std::ofstream out = OpenCsv(path);
  out << "scene,filter,frames,mean_psnr_db\n";
  for (const ScenePsnr& scene : scenes) {
    for (const PsnrResult& r : scene.results) {
      out << scene.scene << ',' << r.filter << ',' << r.per_frame.size() << ','
          << FormatMetric(r.mean) << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void WriteSweepCsv(const std::filesystem::path& path,
                   const std::vector<SweepRow>& rows) {
  std::ofstream out = OpenCsv(path);
  out << "filter,threshold,false_positive_rate,false_negative_rate,scenes\n";
  for (const SweepRow& r : rows) {
    out << r.filter << ',' << r.threshold << ','
        << FormatMetric(r.false_positive_rate) << ','
        << FormatMetric(r.false_negative_rate) << ',' << r.scenes << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void WriteRuntimeCsv(const std::filesystem::path& path,
                     const std::vector<RuntimeRow>& rows) {
  std::ofstream out = OpenCsv(path);
  out << "filter,frames,mean_seconds,std_seconds\n";
  for (const RuntimeRow& r : rows) {
    out << r.filter << ',' << r.frames << ','
        << FormatMetric(r.mean_seconds) << ','
        << FormatMetric(r.std_seconds) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sonarmap
