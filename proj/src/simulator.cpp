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

#include "sonarmap/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "sonarmap/error.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

struct RayHit {
  double distance = std::numeric_limits<double>::infinity();
  int axis = -1;  // slab the ray entered through
  double reflectivity = 0.0;
};

double Component(const CartesianPoint& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

// Slab test. Boxes containing the ray origin are ignored.
bool IntersectBox(const Box& box, const CartesianPoint& origin,
                  const CartesianPoint& direction, double* distance,
                  int* axis) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = -1;
  for (int a = 0; a < 3; ++a) {
    const double o = Component(origin, a);
    const double d = Component(direction, a);
    const double lo = Component(box.min, a);
    const double hi = Component(box.max, a);
    if (std::abs(d) < 1e-15) {
      if (o < lo || o > hi) return false;
      continue;
    }
    double t1 = (lo - o) / d;
    double t2 = (hi - o) / d;
    if (t1 > t2) std::swap(t1, t2);
    if (t1 > t_near) {
      t_near = t1;
      near_axis = a;
    }
    t_far = std::min(t_far, t2);
  }
  if (near_axis < 0 || t_near > t_far || t_near < 0.0) return false;
  *distance = t_near;
  *axis = near_axis;
  return true;
}

}  // namespace

void Scene::Validate() const {
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Box& b = obstacles[i];
    if (!(b.min.x < b.max.x && b.min.y < b.max.y && b.min.z < b.max.z)) {
      throw DataError("obstacle " + std::to_string(i) +
                      ": min corner must be below max corner on every axis");
    }
    if (!(b.reflectivity > 0.0 && b.reflectivity <= 1.0)) {
      throw DataError("obstacle " + std::to_string(i) +
                      ": reflectivity must lie in (0, 1]");
    }
  }
}

bool Scene::Occupied(const CartesianPoint& p) const {
  return std::any_of(obstacles.begin(), obstacles.end(),
                     [&](const Box& b) { return b.Contains(p); });
}

void UpdateBounds(Scene& scene) {
  if (scene.obstacles.empty()) {
    scene.bounds = Box{{-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}, 1.0};
    return;
  }
  Box bounds = scene.obstacles.front();
  for (const Box& b : scene.obstacles) {
    bounds.min = {std::min(bounds.min.x, b.min.x),
                  std::min(bounds.min.y, b.min.y),
                  std::min(bounds.min.z, b.min.z)};
    bounds.max = {std::max(bounds.max.x, b.max.x),
                  std::max(bounds.max.y, b.max.y),
                  std::max(bounds.max.z, b.max.z)};
  }
  bounds.reflectivity = 1.0;
  scene.bounds = bounds;
}

Scene ReadScene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file " + path.string());
  Scene scene;
  bool explicit_bounds = false;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto tokens = internal::SplitWhitespace(
        internal::Trim(internal::StripComment(line)));
    if (tokens.empty()) continue;
    const bool is_bounds = tokens.front() == "bounds";
    if (is_bounds) tokens.erase(tokens.begin());
    const std::size_t expected = is_bounds ? 6 : 7;
    std::vector<double> v;
    for (const auto token : tokens) {
      const auto value = internal::ParseDouble(token);
      if (!value) break;
      v.push_back(*value);
    }
    if (v.size() != expected || tokens.size() != expected) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": expected " + std::to_string(expected) +
                      " numbers");
    }
    Box box{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, is_bounds ? 1.0 : v[6]};
    if (is_bounds) {
      scene.bounds = box;
      explicit_bounds = true;
    } else {
      scene.obstacles.push_back(box);
    }
  }
  scene.Validate();
  if (!explicit_bounds) UpdateBounds(scene);
  return scene;
}

void WriteScene(const std::filesystem::path& path, const Scene& scene) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scene file " + path.string());
  using internal::FormatDouble;
  const auto corners = [&](const Box& b) {
    out << FormatDouble(b.min.x) << ' ' << FormatDouble(b.min.y) << ' '
        << FormatDouble(b.min.z) << ' ' << FormatDouble(b.max.x) << ' '
        << FormatDouble(b.max.y) << ' ' << FormatDouble(b.max.z);
  };
  out << "# min_x min_y min_z max_x max_y max_z reflectivity\n";
  out << "bounds ";
  corners(scene.bounds);
  out << '\n';
  for (const Box& b : scene.obstacles) {
    corners(b);
    out << ' ' << FormatDouble(b.reflectivity) << '\n';
  }
  if (!out) throw IoError("failed writing scene file " + path.string());
}

void NoiseParams::Validate() const {
  if (!(sigma >= 0.0)) throw DataError("noise sigma must be >= 0");
  if (!(background_sigma >= 0.0)) {
    throw DataError("background noise sigma must be >= 0");
  }
}

RenderResult RenderRangeImage(const Scene& scene, const Pose& pose,
                              const SonarConfig& config) {
  config.Validate();
  RangeImage image(config.range_bins, config.bearing_bins);
  for (int b = 0; b < config.bearing_bins; ++b) {
    for (int e = 0; e < config.elevation_samples; ++e) {
      SphericalPoint ray = PixelToRay(config, b, 0, e);
      ray.range = 1.0;
      const CartesianPoint direction =
          RotateToWorld(pose, SphericalToCartesian(ray));
      RayHit hit;
      for (const Box& box : scene.obstacles) {
        double distance;
        int axis;
        if (IntersectBox(box, pose.translation, direction, &distance, &axis) &&
            distance < hit.distance) {
          hit = {distance, axis, box.reflectivity};
        }
      }
      // Hits short of the minimum range still block the ray.
      const int bin = RangeToBin(config, hit.distance);
      if (hit.axis < 0 || bin < 0) continue;
      const double incidence = std::abs(Component(direction, hit.axis));
      const std::uint8_t value =
          QuantizePixel(255.0 * hit.reflectivity * incidence);
      std::uint8_t& pixel = image(bin, b);
      pixel = std::max(pixel, value);
    }
  }
  BinaryMask mask = BinaryMask::FromSupport(image);
  return {std::move(image), std::move(mask)};
}

RangeImage AddSpeckle(const RangeImage& image, const NoiseParams& params) {
  params.Validate();
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  RangeImage out(image.rows(), image.cols());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double n = unit(rng);
    if (src[i] == 0) {
      dst[i] = params.background_sigma > 0.0
                   ? QuantizePixel(std::abs(params.background_sigma * unit(rng)))
                   : 0;
      continue;
    }
    dst[i] = QuantizePixel(src[i] * (1.0 + params.sigma * n));
  }
  return out;
}

}  // namespace sonarmap
