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


#ifndef VOBENCH_MAP_OCTREE_MAP_H_
#define VOBENCH_MAP_OCTREE_MAP_H_

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "vobench/geometry/primitives.h"
#include "vobench/map/occupancy_backend.h"

namespace vobench {
namespace map {

// ln(p / (1 - p)). p = 1 yields +infinity, which the map clamps.
// Throws std::invalid_argument for p outside (0, 1].
double LogOddsIncrement(double p);

struct OctreeOptions {
  double hit_prob = 1.0;
  double miss_prob = 0.4;
  double occupancy_threshold_prob = 0.5;
  double clamp_min = -2.0;
  double clamp_max = 3.5;
  // Merge equal siblings along each update path. When false, updates are
  // lazy and the tree only compacts on an explicit Prune().
  bool prune_on_update = true;
  // Region that must be addressable. The key range is symmetric about the
  // grid origin, so points slightly below the floor are still mapped.
  geometry::Aabb domain{Vec3(-0.5, -0.5, -0.5), Vec3(4.5, 3.3, 2.79)};
};

// Validates probabilities and clamp bounds. Throws std::invalid_argument.
void ValidateOctreeOptions(const OctreeOptions& options);

// Fixed-depth probabilistic occupancy octree whose leaves are grid voxels.
class OctreeMap : public OccupancyBackend {
 public:
  OctreeMap(const grid::GridSpec& spec, const OctreeOptions& options);

  OctreeMap(const OctreeMap&) = delete;
  OctreeMap& operator=(const OctreeMap&) = delete;
  OctreeMap(OctreeMap&&) = default;
  OctreeMap& operator=(OctreeMap&&) = default;

  void Integrate(const Vec3& sensor_origin,
                 std::span<const Vec3> cloud) override;
  grid::VoxelSet OccupiedVoxels() const override;
  void Reset() override;
  std::string_view Name() const override { return "octree"; }
  const grid::GridSpec& spec() const override { return spec_; }

  // Adds `delta` to the voxel's log-odds with clamping. Keys outside the
  // addressable range are ignored.
  void UpdateVoxel(const grid::VoxelKey& key, double delta);

  // Merges every node whose 8 children are all leaves with equal log-odds.
  void Prune();

  // Log-odds of the voxel, or nullopt if never observed.
  std::optional<double> LogOdds(const grid::VoxelKey& key) const;

  bool InRange(const grid::VoxelKey& key) const;

  // Visits every stored leaf. Pruned blocks are reported once with
  // `size` > 1 voxels per side and `min_key` at their lowest corner.
  void ForEachLeaf(const std::function<void(const grid::VoxelKey& min_key,
                                            int size, double log_odds)>& fn)
      const;

  // Number of nodes that Prune() would still merge. Zero after Prune().
  std::size_t CountPrunableNodes() const;

  // Checks that every inner node holds between 1 and 8 children.
  bool ChildCountsValid() const;

  std::size_t NumNodes() const;
  int depth() const { return depth_; }
  const OctreeOptions& options() const { return options_; }

 private:
  struct Node {
    double log_odds = 0.;
    std::unique_ptr<std::array<std::unique_ptr<Node>, 8>> children;
  };

  int ChildIndex(uint32_t ui, uint32_t uj, uint32_t uk, int level) const;
  void ExpandPruned(Node* node);
  bool TryPrune(Node* node);
  void Update(Node* node, int level, uint32_t ui, uint32_t uj, uint32_t uk,
              double delta);
  void PruneRecursive(Node* node);

  grid::GridSpec spec_;
  OctreeOptions options_;
  int depth_ = 0;
  int32_t half_extent_ = 0;  // keys span [-half_extent_, half_extent_)
  double hit_delta_ = 0.;
  double miss_delta_ = 0.;
  double threshold_log_odds_ = 0.;
  std::unique_ptr<Node> root_;

  // Scratch reused across Integrate() calls: key -> hit in this call.
  absl::flat_hash_map<grid::VoxelKey, bool, grid::VoxelKeyHash> touched_;
  std::vector<grid::VoxelKey> ray_;
};

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_OCTREE_MAP_H_
