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


#ifndef VOBENCH_MAP_ESDF_MAP_H_
#define VOBENCH_MAP_ESDF_MAP_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "vobench/grid/grid.h"
#include "vobench/map/tsdf_map.h"

namespace vobench {
namespace map {

// Euclidean distance to the nearest obstacle voxel center over a dense box
// of voxels [min_key, max_key]. Each voxel stores a parent obstacle; the
// field is propagated over the 26-neighbourhood, so distances are measured
// to actual parent coordinates.
//
// The stored field is the unique fixpoint where every non-obstacle voxel v
// takes the lexicographically smallest (|v - p|^2, p) offered by a
// neighbour u holding parent p with |u - p|^2 < |v - p|^2. Batch and
// incremental updates both converge to it, so they agree exactly.
class EsdfMap {
 public:
  EsdfMap(const grid::GridSpec& spec, const grid::VoxelKey& min_key,
          const grid::VoxelKey& max_key);

  // Recomputes the field from scratch.
  void Rebuild(const grid::VoxelSet& obstacles);

  // Brings the field in line with `obstacles` using a raise wavefront for
  // invalidated voxels and a lower wavefront from new or closer obstacles.
  void Update(const grid::VoxelSet& obstacles);

  // Voxels outside this set report as unknown. By default all are known.
  void SetObserved(const grid::VoxelSet& observed);

  bool Contains(const grid::VoxelKey& key) const;
  bool IsObserved(const grid::VoxelKey& key) const;

  // Meters; +infinity when unknown, outside the box or without obstacles.
  double Distance(const grid::VoxelKey& key) const;

  // Squared distance in voxel units, or nullopt if none.
  std::optional<int64_t> SquaredVoxelDistance(const grid::VoxelKey& key) const;
  std::optional<grid::VoxelKey> Parent(const grid::VoxelKey& key) const;

  const grid::VoxelKey& min_key() const { return min_key_; }
  const grid::VoxelKey& max_key() const { return max_key_; }

  // True when both maps hold identical distances and parents everywhere.
  bool SameField(const EsdfMap& other) const;

  // Number of raise/lower rounds used by the last Update().
  int last_update_rounds() const { return last_rounds_; }

 private:
  static constexpr int64_t kInfinity = INT64_MAX;

  struct Cell {
    int64_t dist2 = kInfinity;
    int32_t parent = -1;  // linear index of the obstacle
  };

  std::size_t Index(const grid::VoxelKey& key) const;
  grid::VoxelKey KeyOf(std::size_t index) const;
  int64_t SquaredDistance(std::size_t a, std::size_t b) const;
  bool Supported(std::size_t v) const;
  void MarkDependentsDirty(std::size_t v, int32_t old_parent);
  void RunRaise();
  void RunLower(std::vector<std::size_t> sources);
  template <class Fn>
  void ForEachNeighbor(std::size_t v, Fn&& fn) const;

  grid::GridSpec spec_;
  grid::VoxelKey min_key_;
  grid::VoxelKey max_key_;
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<Cell> cells_;
  std::vector<char> obstacle_;
  std::vector<char> observed_;
  std::vector<char> in_dirty_;
  std::deque<std::size_t> dirty_;
  std::vector<std::size_t> raised_;
  int last_rounds_ = 0;
};

// Field over [min_key, max_key] whose obstacles are the TSDF's occupied
// voxels and whose observed voxels are the TSDF's stored voxels.
EsdfMap EsdfFromTsdf(const TsdfMap& tsdf, const grid::VoxelKey& min_key,
                     const grid::VoxelKey& max_key);

}  // namespace map
}  // namespace vobench

#endif  // VOBENCH_MAP_ESDF_MAP_H_
