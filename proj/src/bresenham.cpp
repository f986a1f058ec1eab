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

#include <cstdlib>
#include <string>

#include "sonarmap/error.hpp"
#include "sonarmap/occupancy.hpp"

namespace sonarmap {
namespace {

std::string ToString(const VoxelIndex& v) {
  return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
         std::to_string(v.z) + ")";
}

int Sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

std::vector<VoxelIndex> Bresenham3D(const GridDims& dims,
                                    const VoxelIndex& start,
                                    const VoxelIndex& end) {
  if (!dims.Contains(start) || !dims.Contains(end)) {
    throw DataError("line endpoints " + ToString(start) + " -> " +
                    ToString(end) + " outside the grid");
  }
  int delta[3] = {std::abs(end.x - start.x), std::abs(end.y - start.y),
                  std::abs(end.z - start.z)};
  const int step[3] = {Sign(end.x - start.x), Sign(end.y - start.y),
                       Sign(end.z - start.z)};
  int major = 0;
  if (delta[1] > delta[major]) major = 1;
  if (delta[2] > delta[major]) major = 2;
  const int minor_a = (major + 1) % 3;
  const int minor_b = (major + 2) % 3;

  int p[3] = {start.x, start.y, start.z};
  std::vector<VoxelIndex> line;
  line.reserve(delta[major] + 1);
  line.push_back(start);
  // Error terms track 2 * (exact minor offset - current minor offset) scaled
  // by the major delta; ties stay on the current voxel.
  int err_a = 2 * delta[minor_a] - delta[major];
  int err_b = 2 * delta[minor_b] - delta[major];
  for (int i = 0; i < delta[major]; ++i) {
    p[major] += step[major];
    if (err_a > 0) {
      p[minor_a] += step[minor_a];
      err_a -= 2 * delta[major];
    }
    if (err_b > 0) {
      p[minor_b] += step[minor_b];
      err_b -= 2 * delta[major];
    }
    err_a += 2 * delta[minor_a];
    err_b += 2 * delta[minor_b];
    line.push_back({p[0], p[1], p[2]});
  }
  return line;
}

}  // namespace sonarmap
