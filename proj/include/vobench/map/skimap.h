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


#ifndef VOBENCH_MAP_SKIMAP_H_
#define VOBENCH_MAP_SKIMAP_H_

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "vobench/map/occupancy_backend.h"
#include "vobench/map/skip_list.h"

namespace vobench {
namespace map {

enum class DecrementMode {
  kNone,     // weights only grow
  kRaycast,  // voxels traversed without a hit lose one unit, floored at 0
};

// Parses "none" / "raycast". Throws std::invalid_argument otherwise.
DecrementMode ParseDecrementMode(std::string_view name);
std::string_view DecrementModeName(DecrementMode mode);

struct SkiMapOptions {
  int min_voxel_weight = 1;
  DecrementMode decrement = DecrementMode::kNone;
};

void ValidateSkiMapOptions(const SkiMapOptions& options);

// Tree of skiplists: x -> y -> z -> weight. Coordinates are implied by the
// path and never stored in the leaves.
class SkiMap : public OccupancyBackend {
 public:
  using ZList = SkipList<int32_t, uint32_t>;
  using YList = SkipList<int32_t, ZList>;
  using XList = SkipList<int32_t, YList>;

  SkiMap(const grid::GridSpec& spec, const SkiMapOptions& options);

  void Integrate(const Vec3& sensor_origin,
                 std::span<const Vec3> cloud) override;
  grid::VoxelSet OccupiedVoxels() const override;
  void Reset() override;
  std::string_view Name() const override { return "skiplist"; }
  const grid::GridSpec& spec() const override { return spec_; }

  // 0 for voxels never stored.
  uint32_t Weight(const grid::VoxelKey& key) const;

  // Visits every stored voxel in (x, y, z) order.
  void ForEachVoxel(
      const std::function<void(const grid::VoxelKey&, uint32_t)>& fn) const;

  std::size_t NumVoxels() const;
  const SkiMapOptions& options() const { return options_; }

 private:
  grid::GridSpec spec_;
  SkiMapOptions options_;
  XList root_;

  absl::flat_hash_set<grid::VoxelKey, grid::VoxelKeyHash> hits_;
  absl::flat_hash_set<grid::VoxelKey, grid::VoxelKeyHash> misses_;
  std::vector<grid::VoxelKey> ray_;
};

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_SKIMAP_H_
