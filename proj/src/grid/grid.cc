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

#include "vobench/grid/grid.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace vobench {
namespace grid {

GridSpec MakeGridSpec(const Vec3& origin, double resolution) {
  if (!origin.allFinite()) {
    throw std::invalid_argument("grid origin must be finite");
  }
  if (!(resolution > 0.) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  return GridSpec{origin, resolution};
}

VoxelKey Quantize(const Vec3& p, const GridSpec& spec) {
  const Vec3 scaled = (p - spec.origin) / spec.resolution;
  return VoxelKey{static_cast<int32_t>(std::floor(scaled.x())),
                  static_cast<int32_t>(std::floor(scaled.y())),
                  static_cast<int32_t>(std::floor(scaled.z()))};
}

Vec3 VoxelCenter(const VoxelKey& key, const GridSpec& spec) {
  return spec.origin + Vec3(key.i + 0.5, key.j + 0.5, key.k + 0.5) *
                           spec.resolution;
}

VoxelSet Voxelize(std::span<const Vec3> points, const GridSpec& spec) {
  VoxelSet set;
  set.reserve(points.size());
  for (const Vec3& p : points) set.insert(Quantize(p, spec));
  return set;
}

void TraverseRay(const Vec3& origin, const Vec3& end, const GridSpec& spec,
                 std::vector<VoxelKey>* out) {
  out->clear();
  const VoxelKey start = Quantize(origin, spec);
  const VoxelKey stop = Quantize(end, spec);
  if (start == stop) return;

  const Vec3 delta = end - origin;
  int32_t current[3] = {start.i, start.j, start.k};
  const int32_t target[3] = {stop.i, stop.j, stop.k};
  int step[3];
  int remaining[3];
  double t_max[3];
  double t_delta[3];
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    remaining[a] = std::abs(target[a] - current[a]);
    step[a] = target[a] > current[a] ? 1 : -1;
    if (remaining[a] == 0 || delta[a] == 0.) {
      t_max[a] = kInf;
      t_delta[a] = kInf;
      continue;
    }
    const double boundary =
        spec.origin[a] +
        (current[a] + (step[a] > 0 ? 1 : 0)) * spec.resolution;
    t_max[a] = (boundary - origin[a]) / delta[a];
    t_delta[a] = spec.resolution / std::abs(delta[a]);
  }

  // Each axis steps exactly |target - start| times, so the walk always lands
  // on the end voxel regardless of rounding in t_max.
  int total = remaining[0] + remaining[1] + remaining[2];
  out->reserve(total);
  while (total > 0) {
    out->push_back(VoxelKey{current[0], current[1], current[2]});
    int axis = -1;
    for (int a = 0; a < 3; ++a) {
      if (remaining[a] == 0) continue;
      if (axis < 0 || t_max[a] < t_max[axis]) axis = a;
    }
    current[axis] += step[axis];
    t_max[axis] += t_delta[axis];
    --remaining[axis];
    --total;
  }
}

std::vector<VoxelKey> TraverseRay(const Vec3& origin, const Vec3& end,
                                  const GridSpec& spec) {
  std::vector<VoxelKey> out;
  TraverseRay(origin, end, spec, &out);
  return out;
}

std::vector<VoxelKey> SortedKeys(const VoxelSet& set) {
  std::vector<VoxelKey> keys(set.begin(), set.end());
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace grid
}  // namespace vobench
