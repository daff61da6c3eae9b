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


#ifndef VOBENCH_MAP_BACKEND_FACTORY_H_
#define VOBENCH_MAP_BACKEND_FACTORY_H_

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "vobench/map/occupancy_backend.h"
#include "vobench/map/octree_map.h"
#include "vobench/map/skimap.h"
#include "vobench/map/tsdf_map.h"

namespace vobench {
namespace map {

inline constexpr std::array<std::string_view, 3> kBackendNames = {
    "octree", "skiplist", "tsdf"};

bool IsBackendName(std::string_view name);

struct BackendConfig {
  std::string backend = "octree";
  grid::GridSpec spec;
  OctreeOptions octree;
  SkiMapOptions skimap;
  TsdfOptions tsdf;
};

// Throws std::invalid_argument for unknown names or invalid options.
std::unique_ptr<OccupancyBackend> MakeBackend(const BackendConfig& config);

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_BACKEND_FACTORY_H_
