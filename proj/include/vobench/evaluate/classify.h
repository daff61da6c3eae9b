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


#ifndef VOBENCH_EVALUATE_CLASSIFY_H_
#define VOBENCH_EVALUATE_CLASSIFY_H_

#include <optional>
#include <span>
#include <string>

#include "vobench/evaluate/metrics.h"
#include "vobench/geometry/convex_hull.h"
#include "vobench/grid/grid.h"

namespace vobench {
namespace evaluate {

struct ClassifiedVoxels {
  grid::VoxelSet tp;
  grid::VoxelSet fp;
  grid::VoxelSet fn;
};

// Retrieved voxels that are neither relevant nor centered inside the hull
// belong to the background and are dropped.
ClassifiedVoxels ClassifyVoxels(const grid::VoxelSet& retrieved,
                                const grid::VoxelSet& relevant,
                                const geometry::ConvexPolyhedron& hull,
                                const grid::GridSpec& spec);

struct FrameEvaluation {
  // Set when the frame cannot be scored; record and classes are empty then.
  std::optional<std::string> skip_reason;
  FrameRecord record;
  ClassifiedVoxels classes;
};

inline constexpr char kSkipNoActor[] = "no actor points";
inline constexpr char kSkipDegenerateHull[] = "degenerate actor hull";

// Scores one frame. actor_points are the fused sensor points that fall on
// the actor; they define both the relevant voxels and the hull.
FrameEvaluation EvaluateFrame(uint64_t timestamp_ns,
                              const grid::VoxelSet& retrieved,
                              std::span<const geometry::Vec3> actor_points,
                              const grid::GridSpec& spec);

}  // namespace evaluate
}  // namespace vobench

#endif  // VOBENCH_EVALUATE_CLASSIFY_H_
