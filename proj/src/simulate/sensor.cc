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


#include "vobench/simulate/sensor.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vobench/simulate/scene.h"

namespace vobench {
namespace simulate {
namespace {

double Radians(double degrees) { return degrees * std::numbers::pi / 180.; }

Eigen::Quaterniond LidarOrientation(const Vec3& position, double pitch_deg) {
  const Vec3 to_center = CellCenter() - position;
  const double yaw = std::atan2(to_center.y(), to_center.x());
  // Positive rotation about y tips the x axis downward.
  return Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
                            Eigen::AngleAxisd(Radians(pitch_deg),
                                              Vec3::UnitY()));
}

}  // namespace

std::string_view SensorKindName(SensorKind kind) {
  return kind == SensorKind::kLidar ? "lidar" : "depth_camera";
}

SensorKind ParseSensorKind(std::string_view name) {
  if (name == "lidar") return SensorKind::kLidar;
  if (name == "depth_camera") return SensorKind::kDepthCamera;
  throw std::invalid_argument("unknown sensor kind: " + std::string(name));
}

void ValidateSensor(const SensorModel& sensor) {
  if (!(sensor.rate_hz > 0.)) {
    throw std::invalid_argument("sensor rate must be positive");
  }
  if (!(sensor.noise_sigma >= 0.) || !(sensor.max_range > 0.)) {
    throw std::invalid_argument("invalid sensor noise or range");
  }
  if (sensor.kind == SensorKind::kLidar) {
    if (sensor.rings < 1 || sensor.azimuth_steps < 1) {
      throw std::invalid_argument("lidar resolution must be positive");
    }
    return;
  }
  if (sensor.width < 1 || sensor.height < 1 || sensor.pool_factor < 1) {
    throw std::invalid_argument("camera resolution must be positive");
  }
  for (double fov : {sensor.horizontal_fov_deg, sensor.vertical_fov_deg_camera}) {
    if (!(fov > 0. && fov < 180.)) {
      throw std::invalid_argument("camera field of view must be in (0, 180)");
    }
  }
  if (sensor.width % sensor.pool_factor || sensor.height % sensor.pool_factor) {
    throw std::invalid_argument("pool factor must divide the image size");
  }
}

std::vector<SensorModel> DefaultSensors() {
  std::vector<SensorModel> sensors;
  const double z = 2.15;
  const Vec3 mounts[] = {Vec3(0.2, 0.2, z), Vec3(3.8, 2.6, z),
                         Vec3(2.0, 0.2, z)};
  for (int i = 0; i < 3; ++i) {
    SensorModel lidar;
    lidar.id = static_cast<uint16_t>(i);
    lidar.name = "lidar_" + std::to_string(i + 1);
    lidar.kind = SensorKind::kLidar;
    lidar.position = mounts[i];
    lidar.orientation = LidarOrientation(mounts[i], 35.);
    lidar.rate_hz = 10.;
    lidar.phase_s = i / 30.;
    sensors.push_back(lidar);
  }
  SensorModel camera;
  camera.id = 3;
  camera.name = "depth_camera";
  camera.kind = SensorKind::kDepthCamera;
  camera.position = Vec3(kCellLength / 2., kCellWidth / 2., 2.2);
  Eigen::Matrix3d axes;
  axes.col(0) = Vec3::UnitX();
  axes.col(1) = -Vec3::UnitY();
  axes.col(2) = -Vec3::UnitZ();
  camera.orientation = Eigen::Quaterniond(axes);
  camera.rate_hz = 30.;
  sensors.push_back(camera);
  return sensors;
}

std::vector<uint64_t> FrameTimestamps(const SensorModel& sensor,
                                      double duration_s) {
  std::vector<uint64_t> stamps;
  const auto phase = static_cast<uint64_t>(std::llround(sensor.phase_s * 1e9));
  const double limit_ns = duration_s * 1e9;
  for (uint64_t k = 0; static_cast<double>(k) < duration_s * sensor.rate_hz;
       ++k) {
    const uint64_t stamp =
        static_cast<uint64_t>(std::llround(k * 1e9 / sensor.rate_hz)) + phase;
    if (static_cast<double>(stamp) > limit_ns) break;
    stamps.push_back(stamp);
  }
  return stamps;
}

std::vector<Vec3> MeanPoolDownsample(const OrganizedCloud& cloud,
                                     int factor) {
  if (factor < 1 || cloud.width % factor || cloud.height % factor) {
    throw std::invalid_argument("pool factor must divide the cloud size");
  }
  if (cloud.points.size() !=
      static_cast<std::size_t>(cloud.width) * cloud.height) {
    throw std::invalid_argument("organized cloud size mismatch");
  }
  std::vector<Vec3> out;
  for (int by = 0; by < cloud.height; by += factor) {
    for (int bx = 0; bx < cloud.width; bx += factor) {
      Vec3 sum = Vec3::Zero();
      int n = 0;
      for (int y = by; y < by + factor; ++y) {
        for (int x = bx; x < bx + factor; ++x) {
          const auto& p = cloud.points[static_cast<std::size_t>(y) *
                                           cloud.width + x];
          if (!p) continue;
          sum += *p;
          ++n;
        }
      }
      if (n > 0) out.push_back(sum / n);
    }
  }
  return out;
}

std::vector<Vec3> LidarDirections(const SensorModel& sensor) {
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(sensor.rings) * sensor.azimuth_steps);
  const Eigen::Matrix3d r = sensor.orientation.toRotationMatrix();
  for (int ring = 0; ring < sensor.rings; ++ring) {
    const double elevation =
        sensor.rings == 1
            ? 0.
            : Radians(-sensor.vertical_fov_deg / 2. +
                      sensor.vertical_fov_deg * ring / (sensor.rings - 1));
    for (int a = 0; a < sensor.azimuth_steps; ++a) {
      const double azimuth =
          Radians(-sensor.azimuth_fov_deg / 2. +
                  sensor.azimuth_fov_deg * (a + 0.5) / sensor.azimuth_steps);
      const Vec3 local(std::cos(elevation) * std::cos(azimuth),
                       std::cos(elevation) * std::sin(azimuth),
                       std::sin(elevation));
      dirs.push_back((r * local).normalized());
    }
  }
  return dirs;
}

OrganizedCloud RenderSensor(const SensorModel& sensor,
                            const geometry::RayScene& scene,
                            std::mt19937_64* rng) {
  std::normal_distribution<double> noise(0., 1.);
  const double sigma = sensor.noise_sigma;
  OrganizedCloud cloud;
  if (sensor.kind == SensorKind::kLidar) {
    const std::vector<Vec3> dirs = LidarDirections(sensor);
    cloud.width = static_cast<int>(dirs.size());
    cloud.height = 1;
    cloud.points.resize(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto hit = scene.Intersect(sensor.position, dirs[i],
                                       sensor.max_range);
      if (!hit) continue;
      const double range = hit->range + (sigma > 0. ? sigma * noise(*rng) : 0.);
      if (range <= 0.) continue;
      cloud.points[i] = sensor.position + range * dirs[i];
    }
    return cloud;
  }

  const Eigen::Matrix3d r = sensor.orientation.toRotationMatrix();
  const double fx =
      sensor.width / 2. / std::tan(Radians(sensor.horizontal_fov_deg) / 2.);
  const double fy = sensor.height / 2. /
                    std::tan(Radians(sensor.vertical_fov_deg_camera) / 2.);
  cloud.width = sensor.width;
  cloud.height = sensor.height;
  cloud.points.resize(static_cast<std::size_t>(sensor.width) * sensor.height);
  for (int v = 0; v < sensor.height; ++v) {
    for (int u = 0; u < sensor.width; ++u) {
      // Unnormalized ray with unit depth along the optical axis.
      const Vec3 pixel_ray = r * Vec3((u + 0.5 - sensor.width / 2.) / fx,
                                      (v + 0.5 - sensor.height / 2.) / fy, 1.);
      const double norm = pixel_ray.norm();
      const auto hit =
          scene.Intersect(sensor.position, pixel_ray / norm, sensor.max_range);
      if (!hit) continue;
      const double depth =
          hit->range / norm + (sigma > 0. ? sigma * noise(*rng) : 0.);
      if (depth <= 0.) continue;
      cloud.points[static_cast<std::size_t>(v) * sensor.width + u] =
          sensor.position + depth * pixel_ray;
    }
  }
  return cloud;
}

std::mt19937_64 FrameGenerator(uint64_t seed, uint16_t sensor_id,
                               uint64_t frame_index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(sensor_id),
                    static_cast<uint32_t>(frame_index),
                    static_cast<uint32_t>(frame_index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace simulate
}  // namespace vobench
