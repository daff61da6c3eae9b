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


#ifndef VOBENCH_MAP_TSDF_MAP_H_
#define VOBENCH_MAP_TSDF_MAP_H_

#include <functional>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "vobench/map/occupancy_backend.h"

namespace vobench {
namespace map {

struct TsdfVoxel {
  double distance = 0.;  // meters, positive in front of the surface
  double weight = 0.;
};

struct TsdfOptions {
  double truncation_distance = 0.1;
  bool constant_weight = false;
  double max_weight = 1e4;
  double occupied_distance_factor = 0.5;
  // Also update every voxel between the sensor and the band with +delta.
  bool voxel_carving = false;
};

void ValidateTsdfOptions(const TsdfOptions& options);

// Weight of one observation at sensor range `z` for a voxel at signed
// distance `d` from the measured surface. Constant mode returns 1;
// otherwise 1/z^2, scaled behind the surface by (delta + d) / delta.
// Throws std::invalid_argument for z <= 0.
double PointWeight(double z, double d, double truncation_distance,
                   bool constant_weight);

class TsdfMap : public OccupancyBackend {
 public:
  TsdfMap(const grid::GridSpec& spec, const TsdfOptions& options);

  void Integrate(const Vec3& sensor_origin,
                 std::span<const Vec3> cloud) override;
  grid::VoxelSet OccupiedVoxels() const override;
  void Reset() override;
  std::string_view Name() const override { return "tsdf"; }
  const grid::GridSpec& spec() const override { return spec_; }

  // Weighted average of one observation into a voxel.
  void ApplyObservation(const grid::VoxelKey& key, double distance,
                        double weight);

  std::optional<TsdfVoxel> Voxel(const grid::VoxelKey& key) const;
  void ForEachVoxel(
      const std::function<void(const grid::VoxelKey&, const TsdfVoxel&)>& fn)
      const;
  std::size_t NumVoxels() const { return voxels_.size(); }
  const TsdfOptions& options() const { return options_; }

 private:
  grid::GridSpec spec_;
  TsdfOptions options_;
  absl::flat_hash_map<grid::VoxelKey, TsdfVoxel, grid::VoxelKeyHash> voxels_;
  std::vector<grid::VoxelKey> ray_;
};

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_TSDF_MAP_H_
