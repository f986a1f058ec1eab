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

#ifndef SONARMAP_SIMULATOR_HPP_
#define SONARMAP_SIMULATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sonarmap/geometry.hpp"
#include "sonarmap/image.hpp"

namespace sonarmap {

// Axis-aligned obstacle in world coordinates.
struct Box {
  CartesianPoint min;
  CartesianPoint max;
  double reflectivity = 1.0;

  bool Contains(const CartesianPoint& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
};

struct Scene {
  std::vector<Box> obstacles;
  // World-frame extent; defaults to the union of the obstacles.
  Box bounds;

  // Throws DataError when a box is inverted or its reflectivity is outside
  // (0, 1].
  void Validate() const;
  bool Occupied(const CartesianPoint& p) const;
};

// Recomputes scene.bounds as the union of all obstacles (empty scene: a unit
// cube at the origin).
void UpdateBounds(Scene& scene);

// Scene files list one box per line, `min_x min_y min_z max_x max_y max_z
// reflectivity`. An optional `bounds min_x min_y min_z max_x max_y max_z` line
// overrides the default extent. '#' starts a comment.
Scene ReadScene(const std::filesystem::path& path);
void WriteScene(const std::filesystem::path& path, const Scene& scene);

struct NoiseParams {
  double sigma = 0.35;  // multiplicative speckle std
  // Std of the |N(0, s)| clutter added to empty pixels; 0 disables it.
  double background_sigma = 0.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct RenderResult {
  RangeImage image;
  BinaryMask mask;
};

// Noise-free range image and its ground-truth mask for one sensor pose.
// Every (bearing, elevation) ray reports its first obstacle hit, so anything
// behind it lies in shadow; the elevation arc collapses onto one pixel by
// taking the brightest return.
RenderResult RenderRangeImage(const Scene& scene, const Pose& pose,
                              const SonarConfig& config);

// out = clip(round(in * (1 + sigma * n))), n ~ N(0, 1) per pixel in raster
// order, plus optional background clutter on zero pixels.
RangeImage AddSpeckle(const RangeImage& image, const NoiseParams& params);

struct CorpusManifest {
  SonarConfig config;
  NoiseParams noise;
  std::vector<std::string> frames;  // file names shared by all three dirs

  static constexpr const char* kNoisyDir = "noisy";
  static constexpr const char* kCleanDir = "clean";
  static constexpr const char* kMaskDir = "mask";
  static constexpr const char* kPoseFile = "poses.csv";
  static constexpr const char* kSceneFile = "scene.txt";
  static constexpr const char* kManifestFile = "manifest.txt";
};

// Per-frame noise seed; frames get independent but reproducible streams.
std::uint64_t FrameSeed(std::uint64_t corpus_seed, std::size_t frame);

std::string FrameFileName(std::size_t frame);

// Renders every pose and writes noisy/, clean/ and mask/ PGM triples plus
// poses.csv, scene.txt and manifest.txt under `out_dir`.
CorpusManifest GenerateCorpus(const Scene& scene,
                              const std::vector<Pose>& trajectory,
                              const SonarConfig& config,
                              const NoiseParams& noise,
                              const std::filesystem::path& out_dir);

void WriteManifest(const std::filesystem::path& path,
                   const CorpusManifest& manifest);
CorpusManifest ReadManifest(const std::filesystem::path& path);

// A corpus loaded back into memory.
struct Corpus {
  CorpusManifest manifest;
  Scene scene;
  std::vector<Pose> poses;
  std::vector<RangeImage> noisy;
  std::vector<RangeImage> clean;
  std::vector<BinaryMask> masks;
};

Corpus LoadCorpus(const std::filesystem::path& dir);

}  // namespace sonarmap

#endif  // SONARMAP_SIMULATOR_HPP_
