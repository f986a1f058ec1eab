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

#include "sonarmap/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "Eigen/Geometry"
#include "sonarmap/error.hpp"
#include "text_util.hpp"

namespace sonarmap {
namespace {

Eigen::Quaterniond ToEigen(const Quaternion& q) {
  return Eigen::Quaterniond(q.w, q.x, q.y, q.z);
}

Eigen::Vector3d ToEigen(const CartesianPoint& p) {
  return Eigen::Vector3d(p.x, p.y, p.z);
}

CartesianPoint FromEigen(const Eigen::Vector3d& v) {
  return {v.x(), v.y(), v.z()};
}

}  // namespace

CartesianPoint operator+(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

CartesianPoint operator-(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

CartesianPoint operator*(double s, const CartesianPoint& p) {
  return {s * p.x, s * p.y, s * p.z};
}

double Norm(const CartesianPoint& p) {
  return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

void SonarConfig::Validate() const {
  if (!(range_min >= 0.0 && range_min < range_max)) {
    throw DataError("sonar config: need 0 <= range_min < range_max");
  }
  if (!(bearing_min < bearing_max) || bearing_min < -std::numbers::pi ||
      bearing_max > std::numbers::pi) {
    throw DataError("sonar config: need -pi <= bearing_min < bearing_max <= pi");
  }
  if (!(elevation_min < elevation_max) ||
      elevation_min < -std::numbers::pi / 2 ||
      elevation_max > std::numbers::pi / 2) {
    throw DataError(
        "sonar config: need -pi/2 <= elevation_min < elevation_max <= pi/2");
  }
  if (bearing_bins < 1 || range_bins < 1 || elevation_samples < 1) {
    throw DataError("sonar config: bin counts must be >= 1");
  }
}

void Pose::Validate() const {
  const double norm = std::sqrt(rotation.w * rotation.w +
                                rotation.x * rotation.x +
                                rotation.y * rotation.y +
                                rotation.z * rotation.z);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw DataError("pose at t=" + std::to_string(timestamp) +
                    ": quaternion is not unit norm");
  }
  if (!std::isfinite(translation.x) || !std::isfinite(translation.y) ||
      !std::isfinite(translation.z)) {
    throw DataError("pose at t=" + std::to_string(timestamp) +
                    ": non-finite translation");
  }
}

Pose Pose::FromYaw(double timestamp, const CartesianPoint& translation,
                   double yaw) {
  Pose pose;
  pose.timestamp = timestamp;
  pose.translation = translation;
  pose.rotation = {std::cos(yaw / 2), 0.0, 0.0, std::sin(yaw / 2)};
  return pose;
}

CartesianPoint SphericalToCartesian(const SphericalPoint& p) {
  const double horizontal = p.range * std::cos(p.elevation);
  return {horizontal * std::cos(p.bearing), horizontal * std::sin(p.bearing),
          p.range * std::sin(p.elevation)};
}

SphericalPoint CartesianToSpherical(const CartesianPoint& c) {
  const double horizontal = std::hypot(c.x, c.y);
  if (horizontal == 0.0 && c.z == 0.0) {
    throw DataError("cannot convert the origin to spherical coordinates");
  }
  SphericalPoint p;
  p.bearing = horizontal == 0.0 ? 0.0 : std::atan2(c.y, c.x);
  p.range = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
  p.elevation = std::atan2(c.z, horizontal);
  return p;
}

SphericalPoint PixelToRay(const SonarConfig& config, int bearing_bin,
                          int range_bin, int elevation_sample) {
  if (bearing_bin < 0 || bearing_bin >= config.bearing_bins ||
      range_bin < 0 || range_bin >= config.range_bins ||
      elevation_sample < 0 || elevation_sample >= config.elevation_samples) {
    throw DataError("pixel index (" + std::to_string(bearing_bin) + ", " +
                    std::to_string(range_bin) + ", " +
                    std::to_string(elevation_sample) +
                    ") outside the sonar configuration");
  }
  SphericalPoint p;
  p.bearing = config.bearing_min + (bearing_bin + 0.5) * config.bearing_step();
  p.range = config.range_min + (range_bin + 0.5) * config.range_step();
  p.elevation =
      config.elevation_min + (elevation_sample + 0.5) * config.elevation_step();
  return p;
}

int RangeToBin(const SonarConfig& config, double range) {
  if (range < config.range_min || range >= config.range_max) return -1;
  // Hits landing on a bin edge up to rounding belong to the bin that starts
  // there.
  const double bin = (range - config.range_min) * config.range_bins /
                     (config.range_max - config.range_min);
  const int index = static_cast<int>(std::floor(bin + 1e-9));
  return std::min(index, config.range_bins - 1);
}

CartesianPoint TransformToWorld(const Pose& pose, const CartesianPoint& c) {
  return FromEigen(ToEigen(pose.rotation) * ToEigen(c) +
                   ToEigen(pose.translation));
}

CartesianPoint RotateToWorld(const Pose& pose, const CartesianPoint& v) {
  return FromEigen(ToEigen(pose.rotation) * ToEigen(v));
}

Pose InversePose(const Pose& pose) {
  const Eigen::Quaterniond inverse = ToEigen(pose.rotation).conjugate();
  Pose out;
  out.timestamp = pose.timestamp;
  out.rotation = {inverse.w(), inverse.x(), inverse.y(), inverse.z()};
  out.translation = FromEigen(-(inverse * ToEigen(pose.translation)));
  return out;
}

std::vector<Pose> ReadPoses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pose file " + path.string());
  std::vector<Pose> poses;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = internal::Trim(internal::StripComment(line));
    if (body.empty()) continue;
    const auto fields = internal::Split(body, ',');
    std::vector<double> values;
    for (const auto field : fields) {
      const auto value = internal::ParseDouble(field);
      if (!value) break;
      values.push_back(*value);
    }
    if (values.size() != fields.size()) {
      if (poses.empty() && values.empty()) continue;  // header
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": malformed pose line");
    }
    if (values.size() != 8) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": expected 8 fields, got " +
                      std::to_string(values.size()));
    }
    Pose pose;
    pose.timestamp = values[0];
    pose.translation = {values[1], values[2], values[3]};
    pose.rotation = {values[4], values[5], values[6], values[7]};
    pose.Validate();
    poses.push_back(pose);
  }
  return poses;
}

void WritePoses(const std::filesystem::path& path,
                const std::vector<Pose>& poses) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write pose file " + path.string());
  using internal::FormatDouble;
  out << "timestamp,x,y,z,qw,qx,qy,qz\n";
  for (const Pose& p : poses) {
    out << FormatDouble(p.timestamp) << ',' << FormatDouble(p.translation.x)
        << ',' << FormatDouble(p.translation.y) << ','
        << FormatDouble(p.translation.z) << ',' << FormatDouble(p.rotation.w)
        << ',' << FormatDouble(p.rotation.x) << ','
        << FormatDouble(p.rotation.y) << ',' << FormatDouble(p.rotation.z)
        << '\n';
  }
  if (!out) throw IoError("failed writing pose file " + path.string());
}

double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace sonarmap
