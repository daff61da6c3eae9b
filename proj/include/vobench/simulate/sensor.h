/*
 * Copyright 2026 The vobench Authors
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


#ifndef VOBENCH_SIMULATE_SENSOR_H_
#define VOBENCH_SIMULATE_SENSOR_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Geometry"
#include "vobench/geometry/ray.h"

namespace vobench {
namespace simulate {

using geometry::Vec3;

enum class SensorKind { kLidar, kDepthCamera };

std::string_view SensorKindName(SensorKind kind);
// Throws std::invalid_argument for unknown names.
SensorKind ParseSensorKind(std::string_view name);

struct SensorModel {
  uint16_t id = 0;
  std::string name;
  SensorKind kind = SensorKind::kLidar;
  Vec3 position = Vec3::Zero();
  // Sensor to cell rotation. Lidar frame: x forward, z up. Camera frame:
  // x right, y down, z along the optical axis.
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  double rate_hz = 10.;
  double phase_s = 0.;
  double noise_sigma = 0.005;
  double max_range = 10.;
  // Lidar.
  int rings = 16;
  int azimuth_steps = 180;
  double vertical_fov_deg = 30.;
  double azimuth_fov_deg = 270.;
  // Depth camera.
  int width = 80;
  int height = 60;
  double horizontal_fov_deg = 60.;
  double vertical_fov_deg_camera = 45.;
  int pool_factor = 2;
};

// Throws std::invalid_argument on non-positive rates or resolutions, or
// camera fields of view outside (0, 180) degrees.
void ValidateSensor(const SensorModel& sensor);

// Three lidars at the top of the gantry pitched down 35 degrees toward the
// cell center, plus a downward depth camera at the top center.
std::vector<SensorModel> DefaultSensors();

// Capture times in nanoseconds: round(k * 1e9 / rate) + round(phase * 1e9)
// for every k with k / rate < duration, dropping stamps past the end.
std::vector<uint64_t> FrameTimestamps(const SensorModel& sensor,
                                      double duration_s);

// Row-major W x H grid of optional points.
struct OrganizedCloud {
  int width = 0;
  int height = 0;
  std::vector<std::optional<Vec3>> points;
};

// Replaces each factor x factor block by the mean of its valid points.
// Empty blocks emit nothing. Throws std::invalid_argument unless factor
// >= 1 divides both dimensions.
std::vector<Vec3> MeanPoolDownsample(const OrganizedCloud& cloud, int factor);

// Unit ray directions in the cell frame, in scan order.
std::vector<Vec3> LidarDirections(const SensorModel& sensor);

// Noiseless hits are perturbed along the ray by N(0, sigma^2). For the
// depth camera the perturbation applies to the depth along the optical
// axis. Returns an organized cloud for cameras (one slot per pixel) and a
// 1 x N cloud for lidars.
OrganizedCloud RenderSensor(const SensorModel& sensor,
                            const geometry::RayScene& scene,
                            std::mt19937_64* rng);

// Generator for one (sensor, frame) pair.
std::mt19937_64 FrameGenerator(uint64_t seed, uint16_t sensor_id,
                               uint64_t frame_index);

}  // namespace simulate
}  // namespace vobench

#endif  // VOBENCH_SIMULATE_SENSOR_H_
