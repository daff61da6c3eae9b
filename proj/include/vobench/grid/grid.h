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

#ifndef VOBENCH_GRID_GRID_H_
#define VOBENCH_GRID_GRID_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "vobench/geometry/primitives.h"

namespace vobench {
namespace grid {

using geometry::Vec3;

// Lattice definition shared by every map and by the ground truth. Voxel
// (0, 0, 0) spans [origin, origin + resolution) on each axis.
struct GridSpec {
  Vec3 origin = Vec3::Zero();
  double resolution = 0.1;

  bool operator==(const GridSpec& other) const {
    return origin == other.origin && resolution == other.resolution;
  }
};

// Throws std::invalid_argument unless resolution > 0 and origin is finite.
GridSpec MakeGridSpec(const Vec3& origin, double resolution);

struct VoxelKey {
  int32_t i = 0;
  int32_t j = 0;
  int32_t k = 0;

  auto operator<=>(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& key) const {
    // Large odd multipliers spread neighbouring keys across buckets.
    uint64_t h = static_cast<uint32_t>(key.i) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<uint32_t>(key.j) * 0xC2B2AE3D27D4EB4Full + (h >> 29);
    h ^= static_cast<uint32_t>(key.k) * 0x165667B19E3779F9ull + (h >> 31);
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

using VoxelSet = std::unordered_set<VoxelKey, VoxelKeyHash>;

// floor((p - origin) / resolution), componentwise.
VoxelKey Quantize(const Vec3& p, const GridSpec& spec);

// origin + (key + 0.5) * resolution.
Vec3 VoxelCenter(const VoxelKey& key, const GridSpec& spec);

VoxelSet Voxelize(std::span<const Vec3> points, const GridSpec& spec);

// Voxels crossed by the segment [origin, end), starting at Quantize(origin)
// and excluding Quantize(end). Consecutive keys differ by one step along one
// axis. On exact corner crossings x steps first, then y, then z.
std::vector<VoxelKey> TraverseRay(const Vec3& origin, const Vec3& end,
                                  const GridSpec& spec);

// Same traversal, appending into `out` (cleared first). Avoids reallocating
// in the integration hot loops.
void TraverseRay(const Vec3& origin, const Vec3& end, const GridSpec& spec,
                 std::vector<VoxelKey>* out);

std::vector<VoxelKey> SortedKeys(const VoxelSet& set);

}  // namespace grid
}  // namespace vobench

#endif  // VOBENCH_GRID_GRID_H_
