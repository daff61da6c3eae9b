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

#include "vobench/geometry/ray.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vobench/common/overloaded.h"

namespace vobench {
namespace geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slab test against the box [lo, hi]. Returns the first t > kMinRayRange.
std::optional<double> SlabIntersect(const Vec3& o, const Vec3& d,
                                    const Vec3& lo, const Vec3& hi) {
  double t_near = -kInf;
  double t_far = kInf;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.) {
      if (o[i] < lo[i] || o[i] > hi[i]) return std::nullopt;
      continue;
    }
    double t0 = (lo[i] - o[i]) / d[i];
    double t1 = (hi[i] - o[i]) / d[i];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  if (t_near > kMinRayRange) return t_near;
  if (t_far > kMinRayRange) return t_far;
  return std::nullopt;
}

std::optional<double> IntersectTriangle(const Vec3& o, const Vec3& d,
                                        const Triangle& tri) {
  // Moller-Trumbore.
  const Vec3 e1 = tri.b - tri.a;
  const Vec3 e2 = tri.c - tri.a;
  const Vec3 p = d.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-15) return std::nullopt;
  const double inv = 1. / det;
  const Vec3 s = o - tri.a;
  const double u = s.dot(p) * inv;
  if (u < 0. || u > 1.) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = d.dot(q) * inv;
  if (v < 0. || u + v > 1.) return std::nullopt;
  const double t = e2.dot(q) * inv;
  if (t > kMinRayRange) return t;
  return std::nullopt;
}

std::optional<double> IntersectCylinder(const Vec3& o, const Vec3& d,
                                        const Cylinder& cyl) {
  const Vec3 axis_vec = cyl.p2 - cyl.p1;
  const double length = axis_vec.norm();
  const Vec3 axis = axis_vec / length;
  const Vec3 oc = o - cyl.p1;
  const double d_par = d.dot(axis);
  const double o_par = oc.dot(axis);
  const Vec3 d_perp = d - d_par * axis;
  const Vec3 o_perp = oc - o_par * axis;
  const double r2 = cyl.radius * cyl.radius;

  double best = kInf;
  auto consider = [&](double t) {
    if (t > kMinRayRange && t < best) best = t;
  };

  // Curved surface.
  const double a = d_perp.squaredNorm();
  if (a > 0.) {
    const double b = 2. * o_perp.dot(d_perp);
    const double c = o_perp.squaredNorm() - r2;
    const double disc = b * b - 4. * a * c;
    if (disc >= 0.) {
      const double sq = std::sqrt(disc);
      // Numerically stable roots.
      const double qv = -0.5 * (b + std::copysign(sq, b));
      const double roots[2] = {qv / a, qv != 0. ? c / qv : -b / (2. * a)};
      for (double t : roots) {
        const double s = o_par + t * d_par;
        if (s >= 0. && s <= length) consider(t);
      }
    }
  }
  // Caps.
  if (d_par != 0.) {
    for (double s_cap : {0., length}) {
      const double t = (s_cap - o_par) / d_par;
      if ((o_perp + t * d_perp).squaredNorm() <= r2) consider(t);
    }
  }
  if (best == kInf) return std::nullopt;
  return best;
}

std::optional<double> IntersectPrism(const Vec3& o, const Vec3& d,
                                     const Prism& prism) {
  const Vec3 rel = o - prism.center;
  Vec3 lo;
  Vec3 local_o;
  Vec3 local_d;
  for (int i = 0; i < 3; ++i) {
    local_o[i] = rel.dot(prism.axes[i]);
    local_d[i] = d.dot(prism.axes[i]);
    lo[i] = -prism.extents[i] / 2.;
  }
  return SlabIntersect(local_o, local_d, lo, -lo);
}

bool RayHitsBox(const Vec3& o, const Vec3& d, const Aabb& box,
                double max_range) {
  double t_near = 0.;
  double t_far = max_range;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.) {
      if (o[i] < box.min[i] || o[i] > box.max[i]) return false;
      continue;
    }
    const double inv = 1. / d[i];
    double t0 = (box.min[i] - o[i]) * inv;
    double t1 = (box.max[i] - o[i]) * inv;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return false;
  }
  return true;
}

}  // namespace

std::optional<double> IntersectPrimitive(const Vec3& origin, const Vec3& dir,
                                         const Primitive& primitive) {
  return std::visit(
      Overloaded{
          [&](const Triangle& t) { return IntersectTriangle(origin, dir, t); },
          [&](const Aabb& b) {
            return SlabIntersect(origin, dir, b.min, b.max);
          },
          [&](const Cylinder& c) { return IntersectCylinder(origin, dir, c); },
          [&](const Prism& p) { return IntersectPrism(origin, dir, p); },
      },
      primitive);
}

std::optional<RayHit> RayIntersect(const Vec3& origin, const Vec3& dir,
                                   std::span<const Primitive> scene) {
  if (std::abs(dir.norm() - 1.) > 1e-9) {
    throw std::invalid_argument("ray direction must be unit length");
  }
  std::optional<RayHit> best;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const std::optional<double> t = IntersectPrimitive(origin, dir, scene[i]);
    if (t && (!best || *t < best->range)) {
      best = RayHit{origin + *t * dir, *t, i};
    }
  }
  return best;
}

RayScene::RayScene(std::vector<Primitive> primitives) {
  for (const Primitive& p : primitives) Add(p);
}

void RayScene::Add(const Primitive& primitive) {
  primitives_.push_back(primitive);
  Aabb box = BoundingBox(primitive);
  const Vec3 pad = Vec3::Constant(1e-9);
  bounds_.push_back(Aabb{box.min - pad, box.max + pad});
}

std::optional<RayHit> RayScene::Intersect(const Vec3& origin, const Vec3& dir,
                                          double max_range) const {
  std::optional<RayHit> best;
  double limit = max_range;
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    if (!RayHitsBox(origin, dir, bounds_[i], limit)) continue;
    const std::optional<double> t =
        IntersectPrimitive(origin, dir, primitives_[i]);
    if (t && *t <= limit && (!best || *t < best->range)) {
      best = RayHit{origin + *t * dir, *t, i};
      limit = *t;
    }
  }
  return best;
}

}  // namespace geometry
}  // namespace vobench
