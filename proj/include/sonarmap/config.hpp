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

#ifndef SONARMAP_CONFIG_HPP_
#define SONARMAP_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sonarmap/filters.hpp"
#include "sonarmap/geometry.hpp"
#include "sonarmap/occupancy.hpp"
#include "sonarmap/simulator.hpp"

namespace sonarmap {

// Sonar block as written in config files; angles in degrees.
struct SonarSettings {
  double range_min = 0.1;
  double range_max = 5.0;
  double bearing_min_deg = -30.0;
  double bearing_max_deg = 30.0;
  double elevation_min_deg = -10.0;
  double elevation_max_deg = 10.0;
  int bearing_bins = 128;
  int range_bins = 256;
  int elevation_samples = 16;

  SonarConfig ToSonarConfig() const;

  friend bool operator==(const SonarSettings&, const SonarSettings&) = default;
};

struct NoiseSettings {
  double sigma = 0.35;
  double background_sigma = 0.0;

  friend bool operator==(const NoiseSettings&, const NoiseSettings&) = default;
};

struct SensorSettings {
  double p_free = 0.55;
  double p_occ = 0.05;
  int threshold = 30;
  std::optional<double> max_range;

  friend bool operator==(const SensorSettings&,
                         const SensorSettings&) = default;
};

struct GridSettings {
  double resolution = 0.05;

  friend bool operator==(const GridSettings&, const GridSettings&) = default;
};

struct PathSettings {
  std::string corpus_dir;
  std::string mask_dir;
  std::string output_dir;

  friend bool operator==(const PathSettings&, const PathSettings&) = default;
};

// Flat `section.key = value` configuration shared by every subcommand.
struct PipelineConfig {
  SonarSettings sonar;
  NoiseSettings noise;
  FilterParams filter;
  SensorSettings sensor;
  GridSettings grid;
  PathSettings paths;
  std::uint64_t seed = 0;

  // Throws DataError on unknown keys, malformed values or violated
  // invariants. Keys not present keep their defaults.
  static PipelineConfig Parse(std::string_view text);
  static PipelineConfig Load(const std::filesystem::path& path);
  // Every key, one per line, in a fixed order; unset optionals are omitted.
  std::string Serialize() const;
  void Validate() const;

  NoiseParams noise_params() const { return {noise.sigma, noise.background_sigma, seed}; }
  SensorModelParams sensor_params() const {
    return {sensor.p_free, sensor.p_occ, sensor.threshold, sensor.max_range};
  }

  friend bool operator==(const PipelineConfig&,
                         const PipelineConfig&) = default;
};

}  // namespace sonarmap

#endif  // SONARMAP_CONFIG_HPP_
