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

#ifndef VOBENCH_GEOMETRY_RAY_H_
#define VOBENCH_GEOMETRY_RAY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vobench/geometry/primitives.h"

namespace vobench {
namespace geometry {

// Hits closer than this are ignored so that a ray leaving a surface does not
// report that surface again.
inline constexpr double kMinRayRange = 1e-9;

struct RayHit {
  Vec3 point;
  double range = 0.;
  std::size_t primitive = 0;  // index into the scene span
};

// Range to the nearest intersection with one primitive, if any.
std::optional<double> IntersectPrimitive(const Vec3& origin, const Vec3& dir,
                                         const Primitive& primitive);

// Nearest hit over a primitive list. `dir` must be unit length.
std::optional<RayHit> RayIntersect(const Vec3& origin, const Vec3& dir,
                                   std::span<const Primitive> scene);

// A primitive list with precomputed bounding boxes for culling.
class RayScene {
 public:
  RayScene() = default;
  explicit RayScene(std::vector<Primitive> primitives);

  void Add(const Primitive& primitive);
  std::span<const Primitive> primitives() const { return primitives_; }

  std::optional<RayHit> Intersect(const Vec3& origin, const Vec3& dir,
                                  double max_range) const;

 private:
  std::vector<Primitive> primitives_;
  std::vector<Aabb> bounds_;
};

}  // namespace geometry
}  // namespace vobench

#endif  // VOBENCH_GEOMETRY_RAY_H_
