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

#ifndef VOBENCH_GEOMETRY_CONVEX_HULL_H_
#define VOBENCH_GEOMETRY_CONVEX_HULL_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "vobench/geometry/primitives.h"

namespace vobench {
namespace geometry {

// Membership tolerance for half-space evaluation.
inline constexpr double kHullTolerance = 1e-9;

// Points x with normal.dot(x) <= offset.
struct HalfSpace {
  Vec3 normal;  // outward, unit length
  double offset = 0.;
};

class ConvexPolyhedron {
 public:
  ConvexPolyhedron(std::vector<HalfSpace> half_spaces, Aabb bounds);

  const std::vector<HalfSpace>& half_spaces() const { return half_spaces_; }
  // Bounding box of the generating points, padded by kHullTolerance.
  const Aabb& bounds() const { return bounds_; }

  // Inclusive within kHullTolerance.
  bool Contains(const Vec3& q) const;

 private:
  std::vector<HalfSpace> half_spaces_;
  Aabb bounds_;
};

class DegenerateHullError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incremental 3-D hull. Coplanar facets are merged so that every half-space
// in the result is distinct. Throws DegenerateHullError for fewer than four
// points or when all points are (near) coplanar.
ConvexPolyhedron ConvexHull(std::span<const Vec3> points);

inline bool PointInHull(const Vec3& q, const ConvexPolyhedron& hull) {
  return hull.Contains(q);
}

}  // namespace geometry
}  // namespace vobench

#endif  // VOBENCH_GEOMETRY_CONVEX_HULL_H_
