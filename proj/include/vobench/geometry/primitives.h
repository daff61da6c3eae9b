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

#ifndef VOBENCH_GEOMETRY_PRIMITIVES_H_
#define VOBENCH_GEOMETRY_PRIMITIVES_H_

#include <array>
#include <variant>

#include "Eigen/Core"
#include "Eigen/Geometry"

namespace vobench {
namespace geometry {

// Coordinates are meters in the cell frame.
using Vec3 = Eigen::Vector3d;

bool IsFinite(const Vec3& v);

// Solid cylinder between two cap centers. Membership is boundary-inclusive.
struct Cylinder {
  Vec3 p1;  // bottom cap center
  Vec3 p2;  // top cap center
  double radius = 0.;
};

// Oriented box. axes[i] are unit face normals, extents[i] the full edge
// length along axes[i] (length, width, height).
struct Prism {
  Vec3 center;
  std::array<Vec3, 3> axes;
  std::array<double, 3> extents{};
};

struct Triangle {
  Vec3 a;
  Vec3 b;
  Vec3 c;
};

struct Aabb {
  Vec3 min;
  Vec3 max;
};

using Primitive = std::variant<Triangle, Aabb, Cylinder, Prism>;

// Validating constructors; throw std::invalid_argument on violated invariants.
Cylinder MakeCylinder(const Vec3& p1, const Vec3& p2, double radius);
Prism MakePrism(const Vec3& center, const std::array<Vec3, 3>& axes,
                const std::array<double, 3>& extents);
Aabb MakeAabb(const Vec3& min, const Vec3& max);

// Axis-aligned prism helper.
Prism MakeAxisAlignedPrism(const Vec3& center, double length, double width,
                           double height);

// Between both cap planes and within radius of the axis (all inclusive).
bool PointInCylinder(const Vec3& q, const Cylinder& cylinder);

// |(q - c) . n_a| <= a / 2 for every face normal.
bool PointInPrism(const Vec3& q, const Prism& prism);

bool PointInAabb(const Vec3& q, const Aabb& box);

// Bounding box of a primitive, used for culling.
Aabb BoundingBox(const Primitive& primitive);

// Euclidean distance from q to the primitive's surface.
double DistanceToSurface(const Vec3& q, const Primitive& primitive);

}  // namespace geometry
}  // namespace vobench

#endif  // VOBENCH_GEOMETRY_PRIMITIVES_H_
