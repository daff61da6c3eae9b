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


#include "vobench/map/skimap.h"

#include <stdexcept>
#include <string>

namespace vobench {
namespace map {

DecrementMode ParseDecrementMode(std::string_view name) {
  if (name == "none") return DecrementMode::kNone;
  if (name == "raycast") return DecrementMode::kRaycast;
  throw std::invalid_argument("unknown decrement mode: " + std::string(name));
}

std::string_view DecrementModeName(DecrementMode mode) {
  return mode == DecrementMode::kNone ? "none" : "raycast";
}

void ValidateSkiMapOptions(const SkiMapOptions& options) {
  if (options.min_voxel_weight < 1) {
    throw std::invalid_argument("minimum voxel weight must be >= 1");
  }
}

SkiMap::SkiMap(const grid::GridSpec& spec, const SkiMapOptions& options)
    : spec_(grid::MakeGridSpec(spec.origin, spec.resolution)),
      options_(options) {
  ValidateSkiMapOptions(options_);
}

void SkiMap::Integrate(const Vec3& sensor_origin,
                       std::span<const Vec3> cloud) {
  hits_.clear();
  for (const Vec3& p : cloud) {
    const grid::VoxelKey key = grid::Quantize(p, spec_);
    if (!hits_.insert(key).second) continue;
    ++root_.FindOrInsert(key.i).FindOrInsert(key.j).FindOrInsert(key.k);
  }
  if (options_.decrement != DecrementMode::kRaycast) return;

  misses_.clear();
  for (const Vec3& p : cloud) {
    grid::TraverseRay(sensor_origin, p, spec_, &ray_);
    for (const grid::VoxelKey& key : ray_) {
      if (hits_.contains(key) || !misses_.insert(key).second) continue;
      YList* y = root_.Find(key.i);
      ZList* z = y ? y->Find(key.j) : nullptr;
      uint32_t* weight = z ? z->Find(key.k) : nullptr;
      if (weight && *weight > 0) --*weight;
    }
  }
}

grid::VoxelSet SkiMap::OccupiedVoxels() const {
  grid::VoxelSet occupied;
  const auto threshold = static_cast<uint32_t>(options_.min_voxel_weight);
  ForEachVoxel([&](const grid::VoxelKey& key, uint32_t weight) {
    if (weight >= threshold) occupied.insert(key);
  });
  return occupied;
}

void SkiMap::Reset() { root_.Clear(); }

uint32_t SkiMap::Weight(const grid::VoxelKey& key) const {
  const YList* y = root_.Find(key.i);
  const ZList* z = y ? y->Find(key.j) : nullptr;
  const uint32_t* weight = z ? z->Find(key.k) : nullptr;
  return weight ? *weight : 0;
}

void SkiMap::ForEachVoxel(
    const std::function<void(const grid::VoxelKey&, uint32_t)>& fn) const {
  root_.ForEach([&](int32_t x, const YList& ys) {
    ys.ForEach([&](int32_t y, const ZList& zs) {
      zs.ForEach([&](int32_t z, uint32_t weight) { fn({x, y, z}, weight); });
    });
  });
}

std::size_t SkiMap::NumVoxels() const {
  std::size_t count = 0;
  root_.ForEach([&](int32_t, const YList& ys) {
    ys.ForEach([&](int32_t, const ZList& zs) { count += zs.size(); });
  });
  return count;
}

}  // namespace map
}  // namespace vobench
