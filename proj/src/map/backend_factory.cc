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


#include "vobench/map/backend_factory.h"

#include <algorithm>
#include <stdexcept>

namespace vobench {
namespace map {

bool IsBackendName(std::string_view name) {
  return std::find(kBackendNames.begin(), kBackendNames.end(), name) !=
         kBackendNames.end();
}

std::unique_ptr<OccupancyBackend> MakeBackend(const BackendConfig& config) {
  if (config.backend == "octree") {
    return std::make_unique<OctreeMap>(config.spec, config.octree);
  }
  if (config.backend == "skiplist") {
    return std::make_unique<SkiMap>(config.spec, config.skimap);
  }
  if (config.backend == "tsdf") {
    return std::make_unique<TsdfMap>(config.spec, config.tsdf);
  }
  throw std::invalid_argument("unknown backend: " + config.backend);
}

}  // namespace map
}  // namespace vobench
