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


#include "vobench/evaluate/classify.h"

namespace vobench {
namespace evaluate {

ClassifiedVoxels ClassifyVoxels(const grid::VoxelSet& retrieved,
                                const grid::VoxelSet& relevant,
                                const geometry::ConvexPolyhedron& hull,
                                const grid::GridSpec& spec) {
  ClassifiedVoxels out;
  for (const grid::VoxelKey& key : retrieved) {
    if (relevant.count(key)) {
      out.tp.insert(key);
    } else if (geometry::PointInHull(grid::VoxelCenter(key, spec), hull)) {
      out.fp.insert(key);
    }
  }
  for (const grid::VoxelKey& key : relevant) {
    if (!retrieved.count(key)) out.fn.insert(key);
  }
  return out;
}

FrameEvaluation EvaluateFrame(uint64_t timestamp_ns,
                              const grid::VoxelSet& retrieved,
                              std::span<const geometry::Vec3> actor_points,
                              const grid::GridSpec& spec) {
  FrameEvaluation out;
  out.record.timestamp_ns = timestamp_ns;
  if (actor_points.empty()) {
    out.skip_reason = kSkipNoActor;
    return out;
  }
  std::optional<geometry::ConvexPolyhedron> hull;
  try {
    hull.emplace(geometry::ConvexHull(actor_points));
  } catch (const geometry::DegenerateHullError&) {
    out.skip_reason = kSkipDegenerateHull;
    return out;
  }
  const grid::VoxelSet relevant = grid::Voxelize(actor_points, spec);
  out.classes = ClassifyVoxels(retrieved, relevant, *hull, spec);
  out.record = MakeFrameRecord(timestamp_ns, out.classes.tp.size(),
                               out.classes.fp.size(), out.classes.fn.size());
  return out;
}

}  // namespace evaluate
}  // namespace vobench
