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

#include "sonarmap/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "sonarmap/error.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

enum Label : std::uint8_t { kUntouched = 0, kFree = 1, kOccupied = 2 };

}  // namespace

double LogOdds(double probability) {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw DataError("probability " + std::to_string(probability) +
                    " outside (0, 1)");
  }
  return std::log(probability / (1.0 - probability));
}

double ProbabilityFromLogOdds(double log_odds) {
  return 1.0 / (1.0 + std::exp(-log_odds));
}

void SensorModelParams::Validate() const {
  if (!(p_free > 0.0 && p_free < 1.0)) throw DataError("p_free outside (0, 1)");
  if (!(p_occ > 0.0 && p_occ < 1.0)) throw DataError("p_occ outside (0, 1)");
  if (threshold < 0 || threshold > 255) {
    throw DataError("threshold must lie in [0, 255]");
  }
  if (max_integration_range && !(*max_integration_range > 0.0)) {
    throw DataError("max_integration_range must be positive");
  }
}

CellEvidence ClassifyPixel(std::uint8_t intensity,
                           const SensorModelParams& params) {
  return intensity < params.threshold ? CellEvidence::kFree
                                      : CellEvidence::kOccupied;
}

OccupancyGrid::OccupancyGrid(const CartesianPoint& origin, double resolution,
                             const GridDims& dims)
    : origin_(origin), resolution_(resolution), dims_(dims) {
  if (!(resolution > 0.0)) throw DataError("grid resolution must be positive");
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw DataError("grid dimensions must be positive");
  }
  cells_.assign(dims.cell_count(), 0.0);
}

OccupancyGrid OccupancyGrid::Covering(const CartesianPoint& min,
                                      const CartesianPoint& max,
                                      double resolution) {
  if (!(resolution > 0.0)) throw DataError("grid resolution must be positive");
  const auto snap = [&](double v) {
    return std::floor(v / resolution + 1e-9) * resolution;
  };
  const CartesianPoint origin{snap(min.x), snap(min.y), snap(min.z)};
  const auto extent = [&](double lo, double hi) {
    return std::max(1, static_cast<int>(std::ceil((hi - lo) / resolution - 1e-9)));
  };
  return OccupancyGrid(origin, resolution,
                       {extent(origin.x, max.x), extent(origin.y, max.y),
                        extent(origin.z, max.z)});
}

VoxelIndex OccupancyGrid::VoxelOf(const CartesianPoint& p) const {
  return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((p.y - origin_.y) / resolution_)),
          static_cast<int>(std::floor((p.z - origin_.z) / resolution_))};
}

CartesianPoint OccupancyGrid::CenterOf(const VoxelIndex& v) const {
  return {origin_.x + (v.x + 0.5) * resolution_,
          origin_.y + (v.y + 0.5) * resolution_,
          origin_.z + (v.z + 0.5) * resolution_};
}

void OccupancyGrid::Update(const VoxelIndex& v, double delta) {
  double& cell = cells_[Flat(v)];
  cell = std::clamp(cell + delta, kMinLogOdds, kMaxLogOdds);
}

VoxelIndex OccupancyGrid::Unflatten(std::size_t index) const {
  const std::size_t plane = static_cast<std::size_t>(dims_.nx) * dims_.ny;
  const int z = static_cast<int>(index / plane);
  const std::size_t rest = index % plane;
  return {static_cast<int>(rest % dims_.nx), static_cast<int>(rest / dims_.nx),
          z};
}

void IntegrateFrame(OccupancyGrid& grid, const RangeImage& image,
                    const Pose& pose, const SonarConfig& config,
                    const SensorModelParams& params, IntegrationStats* stats) {
  params.Validate();
  config.Validate();
  CheckMatches(config, image);
  pose.Validate();
  IntegrationStats local;
  IntegrationStats& out = stats != nullptr ? *stats : local;

  const GridDims& dims = grid.dims();
  if (!dims.Contains(grid.VoxelOf(pose.translation))) {
    ++out.frames_skipped;
    return;
  }
  const double max_range =
      params.max_integration_range.value_or(config.range_max);

  std::vector<std::uint8_t> labels(dims.cell_count(), kUntouched);
  std::vector<std::size_t> touched;
  const auto mark = [&](const VoxelIndex& v, Label label) {
    std::uint8_t& current = labels[grid.Flat(v)];
    if (current == kUntouched) touched.push_back(grid.Flat(v));
    current = std::max<std::uint8_t>(current, label);
  };

  for (int b = 0; b < config.bearing_bins; ++b) {
    for (int e = 0; e < config.elevation_samples; ++e) {
      SphericalPoint ray = PixelToRay(config, b, 0, e);
      ray.range = 1.0;
      const CartesianPoint direction =
          RotateToWorld(pose, SphericalToCartesian(ray));
      std::optional<VoxelIndex> previous;
      for (int k = 0; k < config.range_bins; ++k) {
        const double range =
            config.range_min + (k + 0.5) * config.range_step();
        if (range > max_range) break;
        const VoxelIndex voxel =
            grid.VoxelOf(pose.translation + range * direction);
        if (!dims.Contains(voxel)) break;
        const bool occupied =
            ClassifyPixel(image(k, b), params) == CellEvidence::kOccupied;
        if (previous && !(*previous == voxel)) {
          const auto chain = Bresenham3D(dims, *previous, voxel);
          for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
            mark(chain[i], kFree);
          }
        }
        mark(voxel, occupied ? kOccupied : kFree);
        if (occupied) break;
        previous = voxel;
      }
    }
  }

  const double free_update = params.free_update();
  const double occupied_update = params.occupied_update();
  for (const std::size_t index : touched) {
    grid.Update(grid.Unflatten(index),
                labels[index] == kOccupied ? occupied_update : free_update);
  }
  ++out.frames_integrated;
  out.cells_updated += touched.size();
}

MapSummary Summarize(const OccupancyGrid& grid) {
  MapSummary summary;
  for (const double l : grid.cells()) {
    ++summary.total;
    if (l > 0.0) {
      ++summary.free;
    } else if (l < 0.0) {
      ++summary.occupied;
    } else {
      ++summary.unknown;
    }
  }
  return summary;
}

void ExportMapCsv(const std::filesystem::path& path,
                  const OccupancyGrid& grid) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write map " + path.string());
  using internal::FormatDouble;
  const CartesianPoint& o = grid.origin();
  const GridDims& d = grid.dims();
  out << "# origin=" << FormatDouble(o.x) << ',' << FormatDouble(o.y) << ','
      << FormatDouble(o.z) << '\n'
      << "# resolution=" << FormatDouble(grid.resolution()) << '\n'
      << "# dims=" << d.nx << ',' << d.ny << ',' << d.nz << '\n'
      << "i,j,k,log_odds\n";
  const auto cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == 0.0) continue;
    const VoxelIndex v = grid.Unflatten(i);
    out << v.x << ',' << v.y << ',' << v.z << ',' << FormatDouble(cells[i])
        << '\n';
  }
  if (!out) throw IoError("failed writing map " + path.string());
}

OccupancyGrid ImportMapCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open map " + path.string());
  std::optional<CartesianPoint> origin;
  std::optional<double> resolution;
  std::optional<GridDims> dims;
  OccupancyGrid grid;
  bool header_seen = false;
  std::string line;
  int line_number = 0;
  const auto fail = [&](const std::string& why) {
    return DataError(path.string() + ":" + std::to_string(line_number) + ": " +
                     why);
  };
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = internal::Trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = internal::Trim(body.substr(1, eq - 1));
      const auto values = internal::Split(body.substr(eq + 1), ',');
      std::vector<double> numbers;
      for (const auto v : values) {
        const auto parsed = internal::ParseDouble(v);
        if (!parsed) throw fail("bad number in metadata");
        numbers.push_back(*parsed);
      }
      if (key == "origin" && numbers.size() == 3) {
        origin = CartesianPoint{numbers[0], numbers[1], numbers[2]};
      } else if (key == "resolution" && numbers.size() == 1) {
        resolution = numbers[0];
      } else if (key == "dims" && numbers.size() == 3) {
        dims = GridDims{static_cast<int>(numbers[0]),
                        static_cast<int>(numbers[1]),
                        static_cast<int>(numbers[2])};
      }
      continue;
    }
    if (!header_seen) {
      if (body != "i,j,k,log_odds") throw fail("missing CSV header");
      if (!origin || !resolution || !dims) throw fail("missing grid metadata");
      grid = OccupancyGrid(*origin, *resolution, *dims);
      header_seen = true;
      continue;
    }
    const auto fields = internal::Split(body, ',');
    if (fields.size() != 4) throw fail("expected 4 fields");
    const auto i = internal::ParseInt(fields[0]);
    const auto j = internal::ParseInt(fields[1]);
    const auto k = internal::ParseInt(fields[2]);
    const auto l = internal::ParseDouble(fields[3]);
    if (!i || !j || !k || !l) throw fail("malformed row");
    const VoxelIndex v{static_cast<int>(*i), static_cast<int>(*j),
                       static_cast<int>(*k)};
    if (!grid.dims().Contains(v)) throw fail("cell outside the grid");
    grid.set(v, *l);
  }
  if (!header_seen) throw DataError(path.string() + ": missing CSV header");
  return grid;
}

void ExportPointClouds(const std::filesystem::path& free_path,
                       const std::filesystem::path& occupied_path,
                       const OccupancyGrid& grid) {
  std::ofstream free_out(free_path);
  std::ofstream occ_out(occupied_path);
  if (!free_out || !occ_out) {
    throw IoError("cannot write point clouds next to " + free_path.string());
  }
  using internal::FormatDouble;
  free_out << "x,y,z,log_odds\n";
  occ_out << "x,y,z,log_odds\n";
  const auto cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == 0.0) continue;
    const CartesianPoint c = grid.CenterOf(grid.Unflatten(i));
    std::ofstream& out = cells[i] > 0.0 ? free_out : occ_out;
    out << FormatDouble(c.x) << ',' << FormatDouble(c.y) << ','
        << FormatDouble(c.z) << ',' << FormatDouble(cells[i]) << '\n';
  }
  if (!free_out || !occ_out) throw IoError("failed writing point clouds");
}

void WriteSummary(const std::filesystem::path& path, const MapSummary& summary,
                  const IntegrationStats& stats) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report " + path.string());
  out << "total_cells: " << summary.total << '\n'
      << "free_cells: " << summary.free << '\n'
      << "occupied_cells: " << summary.occupied << '\n'
      << "unknown_cells: " << summary.unknown << '\n'
      << "frames_integrated: " << stats.frames_integrated << '\n'
      << "frames_skipped: " << stats.frames_skipped << '\n'
      << "cell_updates: " << stats.cells_updated << '\n';
  if (!out) throw IoError("failed writing report " + path.string());
}

}  // namespace sonarmap
