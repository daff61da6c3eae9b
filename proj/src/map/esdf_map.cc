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


#include "vobench/map/esdf_map.h"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace vobench {
namespace map {
namespace {

// Bounds the raise/lower alternation. Never reached in practice; if it is,
// the field is rebuilt so the result stays exact.
constexpr int kMaxRounds = 256;

}  // namespace

EsdfMap::EsdfMap(const grid::GridSpec& spec, const grid::VoxelKey& min_key,
                 const grid::VoxelKey& max_key)
    : spec_(grid::MakeGridSpec(spec.origin, spec.resolution)),
      min_key_(min_key),
      max_key_(max_key) {
  if (max_key.i < min_key.i || max_key.j < min_key.j ||
      max_key.k < min_key.k) {
    throw std::invalid_argument("ESDF box is empty");
  }
  nx_ = max_key.i - min_key.i + 1;
  ny_ = max_key.j - min_key.j + 1;
  nz_ = max_key.k - min_key.k + 1;
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_ * nz_;
  if (n > (std::size_t{1} << 30)) {
    throw std::invalid_argument("ESDF box too large");
  }
  cells_.assign(n, Cell{});
  obstacle_.assign(n, 0);
  observed_.assign(n, 1);
  in_dirty_.assign(n, 0);
}

bool EsdfMap::Contains(const grid::VoxelKey& key) const {
  return key.i >= min_key_.i && key.i <= max_key_.i && key.j >= min_key_.j &&
         key.j <= max_key_.j && key.k >= min_key_.k && key.k <= max_key_.k;
}

std::size_t EsdfMap::Index(const grid::VoxelKey& key) const {
  return (static_cast<std::size_t>(key.i - min_key_.i) * ny_ +
          (key.j - min_key_.j)) *
             nz_ +
         (key.k - min_key_.k);
}

grid::VoxelKey EsdfMap::KeyOf(std::size_t index) const {
  const int k = static_cast<int>(index % nz_);
  index /= nz_;
  const int j = static_cast<int>(index % ny_);
  const int i = static_cast<int>(index / ny_);
  return {min_key_.i + i, min_key_.j + j, min_key_.k + k};
}

int64_t EsdfMap::SquaredDistance(std::size_t a, std::size_t b) const {
  const grid::VoxelKey ka = KeyOf(a);
  const grid::VoxelKey kb = KeyOf(b);
  const int64_t di = ka.i - kb.i;
  const int64_t dj = ka.j - kb.j;
  const int64_t dk = ka.k - kb.k;
  return di * di + dj * dj + dk * dk;
}

template <class Fn>
void EsdfMap::ForEachNeighbor(std::size_t v, Fn&& fn) const {
  const grid::VoxelKey key = KeyOf(v);
  for (int di = -1; di <= 1; ++di) {
    const int i = key.i + di;
    if (i < min_key_.i || i > max_key_.i) continue;
    for (int dj = -1; dj <= 1; ++dj) {
      const int j = key.j + dj;
      if (j < min_key_.j || j > max_key_.j) continue;
      for (int dk = -1; dk <= 1; ++dk) {
        const int k = key.k + dk;
        if (k < min_key_.k || k > max_key_.k) continue;
        if (di == 0 && dj == 0 && dk == 0) continue;
        fn(Index({i, j, k}));
      }
    }
  }
}

bool EsdfMap::Supported(std::size_t v) const {
  const Cell& cell = cells_[v];
  if (obstacle_[v] || cell.dist2 == kInfinity) return true;
  if (cell.parent < 0 || !obstacle_[cell.parent]) return false;
  bool supported = false;
  ForEachNeighbor(v, [&](std::size_t u) {
    supported |= cells_[u].parent == cell.parent &&
                 cells_[u].dist2 < cell.dist2;
  });
  return supported;
}

void EsdfMap::MarkDependentsDirty(std::size_t v, int32_t old_parent) {
  if (old_parent < 0) return;
  ForEachNeighbor(v, [&](std::size_t n) {
    if (cells_[n].parent == old_parent && !in_dirty_[n] && !obstacle_[n]) {
      in_dirty_[n] = 1;
      dirty_.push_back(n);
    }
  });
}

void EsdfMap::RunRaise() {
  while (!dirty_.empty()) {
    const std::size_t v = dirty_.front();
    dirty_.pop_front();
    in_dirty_[v] = 0;
    if (Supported(v)) continue;
    const int32_t old_parent = cells_[v].parent;
    cells_[v] = Cell{};
    raised_.push_back(v);
    MarkDependentsDirty(v, old_parent);
  }
}

void EsdfMap::RunLower(std::vector<std::size_t> sources) {
  using Entry = std::tuple<int64_t, int32_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  for (std::size_t s : sources) {
    if (cells_[s].dist2 != kInfinity) {
      queue.emplace(cells_[s].dist2, cells_[s].parent, s);
    }
  }
  while (!queue.empty()) {
    const auto [d, p, u] = queue.top();
    queue.pop();
    if (cells_[u].dist2 != d || cells_[u].parent != p) continue;
    ForEachNeighbor(u, [&](std::size_t n) {
      if (obstacle_[n]) return;
      const int64_t c = SquaredDistance(n, static_cast<std::size_t>(p));
      if (!(d < c)) return;
      Cell& cell = cells_[n];
      if (std::tie(c, p) >= std::tie(cell.dist2, cell.parent)) return;
      if (cell.dist2 != kInfinity) MarkDependentsDirty(n, cell.parent);
      cell = Cell{c, p};
      queue.emplace(c, p, n);
    });
  }
}

void EsdfMap::Rebuild(const grid::VoxelSet& obstacles) {
  cells_.assign(cells_.size(), Cell{});
  obstacle_.assign(obstacle_.size(), 0);
  in_dirty_.assign(in_dirty_.size(), 0);
  dirty_.clear();
  raised_.clear();
  std::vector<std::size_t> sources;
  for (const grid::VoxelKey& key : obstacles) {
    if (!Contains(key)) continue;
    const std::size_t v = Index(key);
    obstacle_[v] = 1;
    cells_[v] = Cell{0, static_cast<int32_t>(v)};
    sources.push_back(v);
  }
  RunLower(std::move(sources));
  // Dirty marks raised by the lower pass are irrelevant from scratch.
  for (std::size_t v : dirty_) in_dirty_[v] = 0;
  dirty_.clear();
}

void EsdfMap::Update(const grid::VoxelSet& obstacles) {
  std::vector<char> wanted(obstacle_.size(), 0);
  for (const grid::VoxelKey& key : obstacles) {
    if (Contains(key)) wanted[Index(key)] = 1;
  }
  std::vector<std::size_t> removed;
  std::vector<std::size_t> added;
  for (std::size_t v = 0; v < wanted.size(); ++v) {
    if (wanted[v] == obstacle_[v]) continue;
    (wanted[v] ? added : removed).push_back(v);
    obstacle_[v] = wanted[v];
  }
  raised_.clear();
  for (std::size_t v : removed) {
    cells_[v] = Cell{};
    raised_.push_back(v);
    MarkDependentsDirty(v, static_cast<int32_t>(v));
  }
  for (std::size_t v : added) {
    const Cell old = cells_[v];
    cells_[v] = Cell{0, static_cast<int32_t>(v)};
    if (old.dist2 != kInfinity) MarkDependentsDirty(v, old.parent);
  }

  std::vector<std::size_t> sources = std::move(added);
  last_rounds_ = 0;
  do {
    RunRaise();
    for (std::size_t r : raised_) {
      ForEachNeighbor(r, [&](std::size_t n) {
        if (cells_[n].dist2 != kInfinity) sources.push_back(n);
      });
    }
    raised_.clear();
    RunLower(std::move(sources));
    sources.clear();
    ++last_rounds_;
  } while (!dirty_.empty() && last_rounds_ < kMaxRounds);

  if (!dirty_.empty()) {
    grid::VoxelSet current;
    for (std::size_t v = 0; v < obstacle_.size(); ++v) {
      if (obstacle_[v]) current.insert(KeyOf(v));
    }
    Rebuild(current);
    last_rounds_ = -1;
  }
}

void EsdfMap::SetObserved(const grid::VoxelSet& observed) {
  observed_.assign(observed_.size(), 0);
  for (const grid::VoxelKey& key : observed) {
    if (Contains(key)) observed_[Index(key)] = 1;
  }
}

bool EsdfMap::IsObserved(const grid::VoxelKey& key) const {
  return Contains(key) && observed_[Index(key)];
}

std::optional<int64_t> EsdfMap::SquaredVoxelDistance(
    const grid::VoxelKey& key) const {
  if (!Contains(key)) return std::nullopt;
  const Cell& cell = cells_[Index(key)];
  if (cell.dist2 == kInfinity) return std::nullopt;
  return cell.dist2;
}

double EsdfMap::Distance(const grid::VoxelKey& key) const {
  if (!IsObserved(key)) return std::numeric_limits<double>::infinity();
  const auto d2 = SquaredVoxelDistance(key);
  if (!d2) return std::numeric_limits<double>::infinity();
  return spec_.resolution * std::sqrt(static_cast<double>(*d2));
}

std::optional<grid::VoxelKey> EsdfMap::Parent(const grid::VoxelKey& key) const {
  if (!Contains(key)) return std::nullopt;
  const Cell& cell = cells_[Index(key)];
  if (cell.parent < 0) return std::nullopt;
  return KeyOf(static_cast<std::size_t>(cell.parent));
}

bool EsdfMap::SameField(const EsdfMap& other) const {
  if (cells_.size() != other.cells_.size()) return false;
  for (std::size_t v = 0; v < cells_.size(); ++v) {
    if (cells_[v].dist2 != other.cells_[v].dist2 ||
        cells_[v].parent != other.cells_[v].parent) {
      return false;
    }
  }
  return true;
}

EsdfMap EsdfFromTsdf(const TsdfMap& tsdf, const grid::VoxelKey& min_key,
                     const grid::VoxelKey& max_key) {
  EsdfMap esdf(tsdf.spec(), min_key, max_key);
  esdf.Rebuild(tsdf.OccupiedVoxels());
  grid::VoxelSet observed;
  tsdf.ForEachVoxel([&](const grid::VoxelKey& key, const TsdfVoxel&) {
    observed.insert(key);
  });
  esdf.SetObserved(observed);
  return esdf;
}

}  // namespace map
}  // namespace vobench
