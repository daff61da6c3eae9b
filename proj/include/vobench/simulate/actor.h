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


#ifndef VOBENCH_SIMULATE_ACTOR_H_
#define VOBENCH_SIMULATE_ACTOR_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vobench/geometry/primitives.h"

namespace vobench {
namespace simulate {

using geometry::Vec3;

inline constexpr double kLimbRadius = 0.1;
inline constexpr double kTorsoDepth = 0.2;
inline constexpr double kTorsoWidth = 0.3;
inline constexpr double kActorHeight = 1.75;
// One loop around the ellipse takes this long.
inline constexpr double kLoopPeriod = 48.0;
inline constexpr double kEllipseMajor = 2.0;
inline constexpr double kEllipseMinor = 1.0;

struct Joint {
  std::string name;
  Vec3 position;
};

struct ActorSkeleton {
  std::vector<Joint> joints;

  std::optional<Vec3> Find(const std::string& name) const;
};

// Joint names in canonical order.
const std::vector<std::string>& JointNames();

// Ellipse root position at time t (cell frame, on the floor).
Vec3 ActorRootAt(double t);

// Rigid skeleton on the ellipse facing its tangent. Throws
// std::out_of_range unless 0 <= t <= duration.
ActorSkeleton ActorPoseAt(double t, double duration = 96.0);

// Bounding primitives of the skeleton segments: r = 0.1 cylinders for head
// and limbs, 0.2 x 0.3 prisms for the torso. Built from joint positions
// only, so recorded poses reproduce them. Throws std::invalid_argument if
// a joint is missing.
std::vector<geometry::Primitive> SegmentPrimitives(
    const ActorSkeleton& skeleton);

// Points inside any of the segment primitives.
std::vector<Vec3> GroundTruthPoints(
    std::span<const Vec3> points,
    std::span<const geometry::Primitive> segments);

bool PointInSegments(const Vec3& p,
                     std::span<const geometry::Primitive> segments);

}  // namespace simulate
}  // namespace vobench

#endif  // VOBENCH_SIMULATE_ACTOR_H_
