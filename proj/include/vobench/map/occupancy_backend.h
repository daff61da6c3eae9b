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


#ifndef VOBENCH_MAP_OCCUPANCY_BACKEND_H_
#define VOBENCH_MAP_OCCUPANCY_BACKEND_H_

#include <span>
#include <string_view>

#include "vobench/grid/grid.h"

namespace vobench {
namespace map {

using grid::Vec3;

// Contract shared by the three mapping backends.
class OccupancyBackend {
 public:
  virtual ~OccupancyBackend() = default;

  // Integrates one point cloud measured from `sensor_origin`. Every call is
  // one integration unit for the per-call dedup rules of each backend.
  virtual void Integrate(const Vec3& sensor_origin,
                         std::span<const Vec3> cloud) = 0;

  virtual grid::VoxelSet OccupiedVoxels() const = 0;

  virtual void Reset() = 0;

  virtual std::string_view Name() const = 0;

  virtual const grid::GridSpec& spec() const = 0;
};

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_OCCUPANCY_BACKEND_H_
