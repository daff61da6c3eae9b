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


#include "vobench/map/octree_map.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vobench {
namespace map {

double LogOddsIncrement(double p) {
  if (!(p > 0. && p <= 1.)) {
    throw std::invalid_argument("probability must lie in (0, 1]");
  }
  if (p == 1.) return std::numeric_limits<double>::infinity();
  return std::log(p / (1. - p));
}

void ValidateOctreeOptions(const OctreeOptions& options) {
  if (!(options.hit_prob > 0. && options.hit_prob <= 1.)) {
    throw std::invalid_argument("hit probability must lie in (0, 1]");
  }
  if (!(options.miss_prob > 0. && options.miss_prob < 1.)) {
    throw std::invalid_argument("miss probability must lie in (0, 1)");
  }
  if (!(options.occupancy_threshold_prob > 0. &&
        options.occupancy_threshold_prob < 1.)) {
    throw std::invalid_argument("occupancy threshold must lie in (0, 1)");
  }
  if (!(std::isfinite(options.clamp_min) && std::isfinite(options.clamp_max) &&
        options.clamp_min < options.clamp_max)) {
    throw std::invalid_argument("clamp bounds must be finite and ordered");
  }
  if (!geometry::IsFinite(options.domain.min) ||
      !geometry::IsFinite(options.domain.max) ||
      (options.domain.max.array() < options.domain.min.array()).any()) {
    throw std::invalid_argument("octree domain must be a finite box");
  }
}

OctreeMap::OctreeMap(const grid::GridSpec& spec, const OctreeOptions& options)
    : spec_(grid::MakeGridSpec(spec.origin, spec.resolution)),
      options_(options) {
  ValidateOctreeOptions(options_);
  const grid::VoxelKey lo = grid::Quantize(options_.domain.min, spec_);
  const grid::VoxelKey hi = grid::Quantize(options_.domain.max, spec_);
  int64_t need = 1;
  for (int64_t v : {-static_cast<int64_t>(lo.i), -static_cast<int64_t>(lo.j),
                    -static_cast<int64_t>(lo.k), int64_t{hi.i} + 1,
                    int64_t{hi.j} + 1, int64_t{hi.k} + 1}) {
    need = std::max(need, v);
  }
  constexpr int kMaxDepth = 21;
  depth_ = 1;
  while ((int64_t{1} << (depth_ - 1)) < need) {
    if (++depth_ > kMaxDepth) {
      throw std::invalid_argument("octree domain too large for resolution");
    }
  }
  half_extent_ = static_cast<int32_t>(int64_t{1} << (depth_ - 1));
  hit_delta_ = LogOddsIncrement(options_.hit_prob);
  miss_delta_ = LogOddsIncrement(options_.miss_prob);
  const double t = options_.occupancy_threshold_prob;
  threshold_log_odds_ = std::log(t / (1. - t));
}

bool OctreeMap::InRange(const grid::VoxelKey& key) const {
  return key.i >= -half_extent_ && key.i < half_extent_ &&
         key.j >= -half_extent_ && key.j < half_extent_ &&
         key.k >= -half_extent_ && key.k < half_extent_;
}

int OctreeMap::ChildIndex(uint32_t ui, uint32_t uj, uint32_t uk,
                          int level) const {
  const int bit = depth_ - 1 - level;
  return static_cast<int>(((ui >> bit) & 1u) | (((uj >> bit) & 1u) << 1) |
                          (((uk >> bit) & 1u) << 2));
}

void OctreeMap::ExpandPruned(Node* node) {
  node->children = std::make_unique<std::array<std::unique_ptr<Node>, 8>>();
  for (auto& child : *node->children) {
    child = std::make_unique<Node>();
    child->log_odds = node->log_odds;
  }
}

bool OctreeMap::TryPrune(Node* node) {
  if (!node->children) return false;
  const auto& children = *node->children;
  for (const auto& child : children) {
    if (!child || child->children) return false;
    if (child->log_odds != children[0]->log_odds) return false;
  }
  node->log_odds = children[0]->log_odds;
  node->children.reset();
  return true;
}

void OctreeMap::Update(Node* node, int level, uint32_t ui, uint32_t uj,
                       uint32_t uk, double delta) {
  if (level == depth_) {
    node->log_odds = std::clamp(node->log_odds + delta, options_.clamp_min,
                                options_.clamp_max);
    return;
  }
  // A childless inner node is a pruned block.
  if (!node->children) ExpandPruned(node);
  auto& child = (*node->children)[ChildIndex(ui, uj, uk, level)];
  if (!child) {
    child = std::make_unique<Node>();
    if (level + 1 < depth_) {
      child->children =
          std::make_unique<std::array<std::unique_ptr<Node>, 8>>();
    }
  }
  Update(child.get(), level + 1, ui, uj, uk, delta);
  if (options_.prune_on_update) TryPrune(node);
}

void OctreeMap::UpdateVoxel(const grid::VoxelKey& key, double delta) {
  if (!InRange(key)) return;
  if (!root_) {
    root_ = std::make_unique<Node>();
    if (depth_ > 0) {
      root_->children =
          std::make_unique<std::array<std::unique_ptr<Node>, 8>>();
    }
  }
  Update(root_.get(), 0, static_cast<uint32_t>(key.i + half_extent_),
         static_cast<uint32_t>(key.j + half_extent_),
         static_cast<uint32_t>(key.k + half_extent_), delta);
}

void OctreeMap::Integrate(const Vec3& sensor_origin,
                          std::span<const Vec3> cloud) {
  touched_.clear();
  for (const Vec3& p : cloud) {
    const grid::VoxelKey key = grid::Quantize(p, spec_);
    if (InRange(key)) touched_[key] = true;
  }
  for (const Vec3& p : cloud) {
    grid::TraverseRay(sensor_origin, p, spec_, &ray_);
    for (const grid::VoxelKey& key : ray_) {
      if (InRange(key)) touched_.try_emplace(key, false);
    }
  }
  for (const auto& [key, hit] : touched_) {
    UpdateVoxel(key, hit ? hit_delta_ : miss_delta_);
  }
}

void OctreeMap::PruneRecursive(Node* node) {
  if (!node->children) return;
  for (auto& child : *node->children) {
    if (child) PruneRecursive(child.get());
  }
  TryPrune(node);
}

void OctreeMap::Prune() {
  if (root_) PruneRecursive(root_.get());
}

std::optional<double> OctreeMap::LogOdds(const grid::VoxelKey& key) const {
  if (!InRange(key) || !root_) return std::nullopt;
  const auto ui = static_cast<uint32_t>(key.i + half_extent_);
  const auto uj = static_cast<uint32_t>(key.j + half_extent_);
  const auto uk = static_cast<uint32_t>(key.k + half_extent_);
  const Node* node = root_.get();
  for (int level = 0; level < depth_; ++level) {
    if (!node->children) return node->log_odds;
    node = (*node->children)[ChildIndex(ui, uj, uk, level)].get();
    if (!node) return std::nullopt;
  }
  return node->log_odds;
}

void OctreeMap::ForEachLeaf(
    const std::function<void(const grid::VoxelKey&, int, double)>& fn) const {
  if (!root_) return;
  struct Frame {
    const Node* node;
    int level;
    grid::VoxelKey min_key;
  };
  std::vector<Frame> stack{
      {root_.get(), 0, {-half_extent_, -half_extent_, -half_extent_}}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const int size = 1 << (depth_ - f.level);
    if (!f.node->children) {
      fn(f.min_key, size, f.node->log_odds);
      continue;
    }
    const int half = size / 2;
    for (int c = 0; c < 8; ++c) {
      const Node* child = (*f.node->children)[c].get();
      if (!child) continue;
      stack.push_back({child, f.level + 1,
                       {f.min_key.i + ((c & 1) ? half : 0),
                        f.min_key.j + ((c & 2) ? half : 0),
                        f.min_key.k + ((c & 4) ? half : 0)}});
    }
  }
}

grid::VoxelSet OctreeMap::OccupiedVoxels() const {
  grid::VoxelSet occupied;
  ForEachLeaf([&](const grid::VoxelKey& min_key, int size, double log_odds) {
    if (log_odds <= threshold_log_odds_) return;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        for (int k = 0; k < size; ++k) {
          occupied.insert({min_key.i + i, min_key.j + j, min_key.k + k});
        }
      }
    }
  });
  return occupied;
}

void OctreeMap::Reset() { root_.reset(); }

namespace {

template <class Node, class Fn>
void VisitInner(const Node* node, Fn&& fn) {
  if (!node || !node->children) return;
  fn(*node);
  for (const auto& child : *node->children) VisitInner(child.get(), fn);
}

template <class Node, class Fn>
void VisitAll(const Node* node, Fn&& fn) {
  if (!node) return;
  fn(*node);
  if (!node->children) return;
  for (const auto& child : *node->children) VisitAll(child.get(), fn);
}

}  // namespace

std::size_t OctreeMap::CountPrunableNodes() const {
  std::size_t count = 0;
  VisitInner(root_.get(), [&](const Node& node) {
    const auto& children = *node.children;
    for (const auto& child : children) {
      if (!child || child->children ||
          child->log_odds != children[0]->log_odds) {
        return;
      }
    }
    ++count;
  });
  return count;
}

bool OctreeMap::ChildCountsValid() const {
  bool valid = true;
  VisitInner(root_.get(), [&](const Node& node) {
    int n = 0;
    for (const auto& child : *node.children) n += child ? 1 : 0;
    if (n == 0) valid = false;
  });
  return valid;
}

std::size_t OctreeMap::NumNodes() const {
  std::size_t count = 0;
  VisitAll(root_.get(), [&](const Node&) { ++count; });
  return count;
}

}  // namespace map
}  // namespace vobench
