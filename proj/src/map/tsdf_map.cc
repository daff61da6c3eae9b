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


#include "vobench/map/tsdf_map.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vobench {
namespace map {

void ValidateTsdfOptions(const TsdfOptions& options) {
  if (!(options.truncation_distance > 0. &&
        std::isfinite(options.truncation_distance))) {
    throw std::invalid_argument("truncation distance must be positive");
  }
  if (!(options.max_weight > 0.)) {
    throw std::invalid_argument("maximum weight must be positive");
  }
  if (!(options.occupied_distance_factor > 0.)) {
    throw std::invalid_argument("occupied distance factor must be positive");
  }
}

double PointWeight(double z, double d, double truncation_distance,
                   bool constant_weight) {
  if (!(z > 0.)) throw std::invalid_argument("sensor range must be positive");
  if (constant_weight) return 1.;
  double weight = 1. / (z * z);
  if (d < 0.) {
    weight *= std::clamp((truncation_distance + d) / truncation_distance, 0.,
                         1.);
  }
  return weight;
}

TsdfMap::TsdfMap(const grid::GridSpec& spec, const TsdfOptions& options)
    : spec_(grid::MakeGridSpec(spec.origin, spec.resolution)),
      options_(options) {
  ValidateTsdfOptions(options_);
}

void TsdfMap::ApplyObservation(const grid::VoxelKey& key, double distance,
                               double weight) {
  if (!(weight > 0.)) return;
  TsdfVoxel& voxel = voxels_[key];
  voxel.distance = (voxel.weight * voxel.distance + weight * distance) /
                   (voxel.weight + weight);
  voxel.weight = std::min(voxel.weight + weight, options_.max_weight);
}

void TsdfMap::Integrate(const Vec3& sensor_origin,
                        std::span<const Vec3> cloud) {
  const double delta = options_.truncation_distance;
  for (const Vec3& point : cloud) {
    const Vec3 ray = point - sensor_origin;
    const double z = ray.norm();
    if (!(z > 0.)) continue;
    const Vec3 dir = ray / z;
    const Vec3 start =
        options_.voxel_carving
            ? sensor_origin
            : Vec3(sensor_origin + std::max(z - delta, 0.) * dir);
    const Vec3 end = sensor_origin + (z + delta) * dir;
    grid::TraverseRay(start, end, spec_, &ray_);
    ray_.push_back(grid::Quantize(end, spec_));
    for (const grid::VoxelKey& key : ray_) {
      const Vec3 center = grid::VoxelCenter(key, spec_);
      const double d =
          std::clamp(z - dir.dot(center - sensor_origin), -delta, delta);
      ApplyObservation(key, d,
                       PointWeight(z, d, delta, options_.constant_weight));
    }
  }
}

grid::VoxelSet TsdfMap::OccupiedVoxels() const {
  grid::VoxelSet occupied;
  const double limit = options_.occupied_distance_factor * spec_.resolution;
  for (const auto& [key, voxel] : voxels_) {
    if (voxel.weight > 0. && voxel.distance < limit) occupied.insert(key);
  }
  return occupied;
}

void TsdfMap::Reset() { voxels_.clear(); }

std::optional<TsdfVoxel> TsdfMap::Voxel(const grid::VoxelKey& key) const {
  const auto it = voxels_.find(key);
  if (it == voxels_.end()) return std::nullopt;
  return it->second;
}

void TsdfMap::ForEachVoxel(
    const std::function<void(const grid::VoxelKey&, const TsdfVoxel&)>& fn)
    const {
  for (const auto& [key, voxel] : voxels_) fn(key, voxel);
}

}  // namespace map
}  // namespace vobench
