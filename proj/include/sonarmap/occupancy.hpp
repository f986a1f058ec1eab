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

#ifndef SONARMAP_OCCUPANCY_HPP_
#define SONARMAP_OCCUPANCY_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sonarmap/geometry.hpp"
#include "sonarmap/image.hpp"

namespace sonarmap {

struct VoxelIndex {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const VoxelIndex&, const VoxelIndex&) = default;
};

struct GridDims {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  bool Contains(const VoxelIndex& v) const {
    return v.x >= 0 && v.x < nx && v.y >= 0 && v.y < ny && v.z >= 0 &&
           v.z < nz;
  }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }

  friend bool operator==(const GridDims&, const GridDims&) = default;
};

// ln(p / (1 - p)). Throws DataError unless p lies in (0, 1).
double LogOdds(double probability);
double ProbabilityFromLogOdds(double log_odds);

enum class CellEvidence { kFree, kOccupied };

struct SensorModelParams {
  double p_free = 0.55;
  double p_occ = 0.05;
  int threshold = 30;  // pixels with intensity >= threshold are occupied
  // Rays are cut at this range; unset means the sonar's maximum range.
  std::optional<double> max_integration_range;

  void Validate() const;
  // Increment for a cell seen free; positive under the free-positive sign
  // convention used throughout the map.
  double free_update() const { return LogOdds(p_free); }
  double occupied_update() const { return LogOdds(p_occ); }
};

// Inverse sensor model: free iff z < t.
CellEvidence ClassifyPixel(std::uint8_t intensity,
                           const SensorModelParams& params);

// Integer 3D Bresenham line from `start` to `end`, both inclusive. The chain
// steps one voxel along the dominant axis at a time and is 26-connected.
// Throws DataError if either endpoint is outside `dims`.
std::vector<VoxelIndex> Bresenham3D(const GridDims& dims,
                                    const VoxelIndex& start,
                                    const VoxelIndex& end);

// Dense 3D log-odds grid. Positive values mean free, negative occupied and
// exactly zero unknown. Cells are clamped to [kMinLogOdds, kMaxLogOdds].
class OccupancyGrid {
 public:
  static constexpr double kMinLogOdds = -10.0;
  static constexpr double kMaxLogOdds = 10.0;

  OccupancyGrid() = default;
  OccupancyGrid(const CartesianPoint& origin, double resolution,
                const GridDims& dims);

  // A grid covering [min, max] with its origin snapped to a multiple of the
  // resolution, so voxel faces fall on integer multiples of it.
  static OccupancyGrid Covering(const CartesianPoint& min,
                                const CartesianPoint& max, double resolution);

  const CartesianPoint& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  const GridDims& dims() const { return dims_; }

  // Voxel containing `p`; may lie outside dims().
  VoxelIndex VoxelOf(const CartesianPoint& p) const;
  CartesianPoint CenterOf(const VoxelIndex& v) const;

  double at(const VoxelIndex& v) const { return cells_[Flat(v)]; }
  void set(const VoxelIndex& v, double value) { cells_[Flat(v)] = value; }
  // Adds `delta` and clamps.
  void Update(const VoxelIndex& v, double delta);

  std::span<const double> cells() const { return cells_; }
  std::size_t Flat(const VoxelIndex& v) const {
    return (static_cast<std::size_t>(v.z) * dims_.ny + v.y) * dims_.nx + v.x;
  }
  VoxelIndex Unflatten(std::size_t index) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  CartesianPoint origin_;
  double resolution_ = 1.0;
  GridDims dims_;
  std::vector<double> cells_;
};

struct IntegrationStats {
  int frames_integrated = 0;
  int frames_skipped = 0;  // sensor origin outside the grid
  std::size_t cells_updated = 0;
};

// Folds one range image into the grid. Every (bearing, elevation) ray walks
// the range bins outward; below-threshold bins mark their voxels free, the
// first bin at or above the threshold marks its voxel occupied and ends the
// ray. Consecutive bin voxels are joined with Bresenham3D. Each voxel gets at
// most one update per frame, with occupied evidence taking precedence.
void IntegrateFrame(OccupancyGrid& grid, const RangeImage& image,
                    const Pose& pose, const SonarConfig& config,
                    const SensorModelParams& params, IntegrationStats* stats);

struct MapSummary {
  std::size_t total = 0;
  std::size_t free = 0;      // l > 0
  std::size_t occupied = 0;  // l < 0
  std::size_t unknown = 0;   // l == 0
};

MapSummary Summarize(const OccupancyGrid& grid);

// CSV `i,j,k,log_odds` for nonzero cells, preceded by '#' lines recording the
// grid geometry.
void ExportMapCsv(const std::filesystem::path& path, const OccupancyGrid& grid);
OccupancyGrid ImportMapCsv(const std::filesystem::path& path);
// Voxel centers `x,y,z,log_odds` of free (l > 0) and occupied (l < 0) cells.
void ExportPointClouds(const std::filesystem::path& free_path,
                       const std::filesystem::path& occupied_path,
                       const OccupancyGrid& grid);
void WriteSummary(const std::filesystem::path& path, const MapSummary& summary,
                  const IntegrationStats& stats);

}  // namespace sonarmap

#endif  // SONARMAP_OCCUPANCY_HPP_
