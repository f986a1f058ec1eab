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

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "sonarmap/error.hpp"
#include "sonarmap/simulator.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

constexpr const char* kFormatTag = "sonarmap-corpus-1";

std::filesystem::path EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());
  return dir;
}

double RequireDouble(const std::map<std::string, std::string>& kv,
                     const std::string& key, const std::filesystem::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw DataError(path.string() + ": missing key " + key);
  const auto value = internal::ParseDouble(it->second);
  if (!value) throw DataError(path.string() + ": bad value for " + key);
  return *value;
}

long long RequireInt(const std::map<std::string, std::string>& kv,
                     const std::string& key, const std::filesystem::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw DataError(path.string() + ": missing key " + key);
  const auto value = internal::ParseInt(it->second);
  if (!value) throw DataError(path.string() + ": bad value for " + key);
  return *value;
}

}  // namespace

std::uint64_t FrameSeed(std::uint64_t corpus_seed, std::size_t frame) {
  // splitmix64 finalizer
  std::uint64_t z = corpus_seed + 0x9e3779b97f4a7c15ULL * (frame + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string FrameFileName(std::size_t frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05zu.pgm", frame);
  return buf;
}

void WriteManifest(const std::filesystem::path& path,
                   const CorpusManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  using internal::FormatDouble;
  const SonarConfig& c = manifest.config;
  out << "format = " << kFormatTag << '\n'
      << "frame_count = " << manifest.frames.size() << '\n'
      << "noise.sigma = " << FormatDouble(manifest.noise.sigma) << '\n'
      << "noise.background_sigma = "
      << FormatDouble(manifest.noise.background_sigma) << '\n'
      << "noise.seed = " << manifest.noise.seed << '\n'
      << "sonar.range_min = " << FormatDouble(c.range_min) << '\n'
      << "sonar.range_max = " << FormatDouble(c.range_max) << '\n'
      << "sonar.bearing_min_rad = " << FormatDouble(c.bearing_min) << '\n'
      << "sonar.bearing_max_rad = " << FormatDouble(c.bearing_max) << '\n'
      << "sonar.elevation_min_rad = " << FormatDouble(c.elevation_min) << '\n'
      << "sonar.elevation_max_rad = " << FormatDouble(c.elevation_max) << '\n'
      << "sonar.bearing_bins = " << c.bearing_bins << '\n'
      << "sonar.range_bins = " << c.range_bins << '\n'
      << "sonar.elevation_samples = " << c.elevation_samples << '\n'
      << "dirs = " << CorpusManifest::kNoisyDir << ' '
      << CorpusManifest::kCleanDir << ' ' << CorpusManifest::kMaskDir << '\n';
  for (const std::string& frame : manifest.frames) {
    out << "frame = " << frame << '\n';
  }
  if (!out) throw IoError("failed writing manifest " + path.string());
}

CorpusManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::map<std::string, std::string> kv;
  CorpusManifest manifest;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = internal::Trim(internal::StripComment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(path.string() + ": malformed line '" +
                      std::string(body) + "'");
    }
    const std::string key(internal::Trim(body.substr(0, eq)));
    const std::string value(internal::Trim(body.substr(eq + 1)));
    if (key == "frame") {
      manifest.frames.push_back(value);
    } else {
      kv[key] = value;
    }
  }
  if (kv["format"] != kFormatTag) {
    throw DataError(path.string() + ": unknown manifest format");
  }
  if (RequireInt(kv, "frame_count", path) !=
      static_cast<long long>(manifest.frames.size())) {
    throw DataError(path.string() + ": frame_count does not match frame list");
  }
  manifest.noise.sigma = RequireDouble(kv, "noise.sigma", path);
  manifest.noise.background_sigma =
      RequireDouble(kv, "noise.background_sigma", path);
  const auto seed = internal::ParseUint64(kv["noise.seed"]);
  if (!seed) throw DataError(path.string() + ": bad value for noise.seed");
  manifest.noise.seed = *seed;
  SonarConfig& c = manifest.config;
  c.range_min = RequireDouble(kv, "sonar.range_min", path);
  c.range_max = RequireDouble(kv, "sonar.range_max", path);
  c.bearing_min = RequireDouble(kv, "sonar.bearing_min_rad", path);
  c.bearing_max = RequireDouble(kv, "sonar.bearing_max_rad", path);
  c.elevation_min = RequireDouble(kv, "sonar.elevation_min_rad", path);
  c.elevation_max = RequireDouble(kv, "sonar.elevation_max_rad", path);
  c.bearing_bins = static_cast<int>(RequireInt(kv, "sonar.bearing_bins", path));
  c.range_bins = static_cast<int>(RequireInt(kv, "sonar.range_bins", path));
  c.elevation_samples =
      static_cast<int>(RequireInt(kv, "sonar.elevation_samples", path));
  c.Validate();
  return manifest;
}

CorpusManifest GenerateCorpus(const Scene& scene,
                              const std::vector<Pose>& trajectory,
                              const SonarConfig& config,
                              const NoiseParams& noise,
                              const std::filesystem::path& out_dir) {
  config.Validate();
  noise.Validate();
  scene.Validate();
  const auto noisy_dir = EnsureDir(out_dir / CorpusManifest::kNoisyDir);
  const auto clean_dir = EnsureDir(out_dir / CorpusManifest::kCleanDir);
  const auto mask_dir = EnsureDir(out_dir / CorpusManifest::kMaskDir);

  CorpusManifest manifest;
  manifest.config = config;
  manifest.noise = noise;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    trajectory[i].Validate();
    const RenderResult rendered =
        RenderRangeImage(scene, trajectory[i], config);
    NoiseParams frame_noise = noise;
    frame_noise.seed = FrameSeed(noise.seed, i);
    const std::string name = FrameFileName(i);
    WritePgm(noisy_dir / name, AddSpeckle(rendered.image, frame_noise));
    WritePgm(clean_dir / name, rendered.image);
    WritePgm(mask_dir / name, rendered.mask.image());
    manifest.frames.push_back(name);
  }
  WritePoses(out_dir / CorpusManifest::kPoseFile, trajectory);
  WriteScene(out_dir / CorpusManifest::kSceneFile, scene);
  WriteManifest(out_dir / CorpusManifest::kManifestFile, manifest);
  return manifest;
}

Corpus LoadCorpus(const std::filesystem::path& dir) {
  Corpus corpus;
  corpus.manifest = ReadManifest(dir / CorpusManifest::kManifestFile);
  corpus.scene = ReadScene(dir / CorpusManifest::kSceneFile);
  corpus.poses = ReadPoses(dir / CorpusManifest::kPoseFile);
  if (corpus.poses.size() != corpus.manifest.frames.size()) {
    throw DataError(dir.string() + ": " +
                    std::to_string(corpus.manifest.frames.size()) +
                    " frames but " + std::to_string(corpus.poses.size()) +
                    " poses");
  }
  for (const std::string& name : corpus.manifest.frames) {
    corpus.noisy.push_back(ReadPgm(dir / CorpusManifest::kNoisyDir / name));
    corpus.clean.push_back(ReadPgm(dir / CorpusManifest::kCleanDir / name));
    corpus.masks.push_back(BinaryMask::FromImage(
        ReadPgm(dir / CorpusManifest::kMaskDir / name)));
    CheckMatches(corpus.manifest.config, corpus.noisy.back());
    CheckMatches(corpus.manifest.config, corpus.clean.back());
    CheckMatches(corpus.manifest.config, corpus.masks.back().image());
  }
  return corpus;
}

}  // namespace sonarmap
