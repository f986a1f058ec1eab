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

#ifndef SONARMAP_GEOMETRY_HPP_
#define SONARMAP_GEOMETRY_HPP_

#include <filesystem>
#include <vector>

namespace sonarmap {

// A point in the sonar's local spherical frame. Bearing is measured in the
// horizontal x-y plane from +x towards +y, elevation from that plane
// towards +z. Angles in radians, range in meters.
struct SphericalPoint {
  double bearing = 0.0;
  double range = 0.0;
  double elevation = 0.0;
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const CartesianPoint&,
                         const CartesianPoint&) = default;
};

CartesianPoint operator+(const CartesianPoint& a, const CartesianPoint& b);
CartesianPoint operator-(const CartesianPoint& a, const CartesianPoint& b);
CartesianPoint operator*(double s, const CartesianPoint& p);
double Norm(const CartesianPoint& p);

// Frustum and discretization of an imaging sonar. Angles in radians.
struct SonarConfig {
  double range_min = 0.1;
  double range_max = 5.0;
  double bearing_min = -0.5235987755982988;  // -30 deg
  double bearing_max = 0.5235987755982988;
  double elevation_min = -0.17453292519943295;  // -10 deg
  double elevation_max = 0.17453292519943295;
  int bearing_bins = 128;
  int range_bins = 256;
  int elevation_samples = 16;

  double range_step() const { return (range_max - range_min) / range_bins; }
  double bearing_step() const {
    return (bearing_max - bearing_min) / bearing_bins;
  }
  double elevation_step() const {
    return (elevation_max - elevation_min) / elevation_samples;
  }

  // Throws DataError when an invariant is violated.
  void Validate() const;

  friend bool operator==(const SonarConfig&, const SonarConfig&) = default;
};

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Sensor pose in the world frame: p_world = rotation * p_sensor + translation.
struct Pose {
  double timestamp = 0.0;
  CartesianPoint translation;
  Quaternion rotation;

  // Throws DataError unless the quaternion has unit norm within 1e-6.
  void Validate() const;

  static Pose Identity() { return {}; }
  // Rotation about +z by `yaw` radians.
  static Pose FromYaw(double timestamp, const CartesianPoint& translation,
                      double yaw);
};

CartesianPoint SphericalToCartesian(const SphericalPoint& p);

// Inverse of SphericalToCartesian. The bearing is defined as 0 on the z axis.
// Throws DataError for the origin.
SphericalPoint CartesianToSpherical(const CartesianPoint& c);

// Bin-center spherical coordinates of one pixel of a range image sampled at
// one elevation along its arc. Throws DataError for out-of-range indices.
SphericalPoint PixelToRay(const SonarConfig& config, int bearing_bin,
                          int range_bin, int elevation_sample);

// Index of the range bin containing `range`, or -1 when outside
// [range_min, range_max).
int RangeToBin(const SonarConfig& config, double range);

CartesianPoint TransformToWorld(const Pose& pose, const CartesianPoint& c);
// Rotates a direction vector without translating it.
CartesianPoint RotateToWorld(const Pose& pose, const CartesianPoint& v);
Pose InversePose(const Pose& pose);

// Pose files are CSV lines `timestamp,x,y,z,qw,qx,qy,qz`. A non-numeric
// first line is treated as a header and '#' starts a comment.
std::vector<Pose> ReadPoses(const std::filesystem::path& path);
void WritePoses(const std::filesystem::path& path,
                const std::vector<Pose>& poses);

double DegToRad(double deg);
double RadToDeg(double rad);

}  // namespace sonarmap

#endif  // SONARMAP_GEOMETRY_HPP_
