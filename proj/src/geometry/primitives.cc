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

#include "vobench/geometry/primitives.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vobench/common/overloaded.h"

namespace vobench {
namespace geometry {
namespace {

constexpr double kUnitTolerance = 1e-9;

// Distance from a point to a box given in its own frame as half extents.
double BoxSurfaceDistance(const Vec3& local, const Vec3& half) {
  const Vec3 outside = (local.cwiseAbs() - half).cwiseMax(0.);
  if (outside.squaredNorm() > 0.) return outside.norm();
  return (half - local.cwiseAbs()).minCoeff();
}

double TriangleDistance(const Vec3& p, const Triangle& t) {
  // Closest point on triangle (Ericson, Real-Time Collision Detection 5.1.5).
  const Vec3 ab = t.b - t.a;
  const Vec3 ac = t.c - t.a;
  const Vec3 ap = p - t.a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0. && d2 <= 0.) return ap.norm();
  const Vec3 bp = p - t.b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0. && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0. && d1 >= 0. && d3 <= 0.) {
    const double v = d1 / (d1 - d3);
    return (p - (t.a + v * ab)).norm();
  }
  const Vec3 cp = p - t.c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0. && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0. && d2 >= 0. && d6 <= 0.) {
    const double w = d2 / (d2 - d6);
    return (p - (t.a + w * ac)).norm();
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0. && (d4 - d3) >= 0. && (d5 - d6) >= 0.) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (t.b + w * (t.c - t.b))).norm();
  }
  const double denom = 1. / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return (p - (t.a + ab * v + ac * w)).norm();
}

double CylinderDistance(const Vec3& q, const Cylinder& c) {
  const Vec3 axis = c.p2 - c.p1;
  const double length = axis.norm();
  const Vec3 unit = axis / length;
  const Vec3 rel = q - c.p1;
  const double s = rel.dot(unit);
  const double rho = (rel - s * unit).norm();
  const bool within_caps = s >= 0. && s <= length;
  if (within_caps && rho <= c.radius) {
    return std::min({c.radius - rho, s, length - s});
  }
  const double axial = within_caps ? 0. : (s < 0. ? -s : s - length);
  const double radial = std::max(0., rho - c.radius);
  return std::hypot(axial, radial);
}

}  // namespace

bool IsFinite(const Vec3& v) { return v.allFinite(); }

Cylinder MakeCylinder(const Vec3& p1, const Vec3& p2, double radius) {
  if (!IsFinite(p1) || !IsFinite(p2)) {
    throw std::invalid_argument("cylinder cap centers must be finite");
  }
  if ((p2 - p1).norm() <= 0.) {
    throw std::invalid_argument("cylinder cap centers must differ");
  }
  if (!(radius > 0.)) {
    throw std::invalid_argument("cylinder radius must be positive");
  }
  return Cylinder{p1, p2, radius};
}

Prism MakePrism(const Vec3& center, const std::array<Vec3, 3>& axes,
                const std::array<double, 3>& extents) {
  if (!IsFinite(center)) {
    throw std::invalid_argument("prism center must be finite");
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(axes[i].norm() - 1.) > kUnitTolerance) {
      throw std::invalid_argument("prism face normals must be unit length");
    }
    if (!(extents[i] > 0.)) {
      throw std::invalid_argument("prism extents must be positive");
    }
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(axes[i].dot(axes[j])) > kUnitTolerance) {
        throw std::invalid_argument("prism face normals must be orthogonal");
      }
    }
  }
  return Prism{center, axes, extents};
}

Aabb MakeAabb(const Vec3& min, const Vec3& max) {
  if (!IsFinite(min) || !IsFinite(max) || (min.array() > max.array()).any()) {
    throw std::invalid_argument("aabb requires finite min <= max");
  }
  return Aabb{min, max};
}

Prism MakeAxisAlignedPrism(const Vec3& center, double length, double width,
                           double height) {
  return MakePrism(center, {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()},
                   {length, width, height});
}

bool PointInCylinder(const Vec3& q, const Cylinder& cylinder) {
  const Vec3 axis = cylinder.p2 - cylinder.p1;
  if ((q - cylinder.p1).dot(axis) < 0.) return false;
  if ((q - cylinder.p2).dot(axis) > 0.) return false;
  // |(q - p1) x axis| / |axis| <= r, compared squared.
  const double cross_sq = (q - cylinder.p1).cross(axis).squaredNorm();
  return cross_sq <= cylinder.radius * cylinder.radius * axis.squaredNorm();
}

bool PointInPrism(const Vec3& q, const Prism& prism) {
  const Vec3 rel = q - prism.center;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(rel.dot(prism.axes[i])) > prism.extents[i] / 2.) return false;
  }
  return true;
}

bool PointInAabb(const Vec3& q, const Aabb& box) {
  return (q.array() >= box.min.array()).all() &&
         (q.array() <= box.max.array()).all();
}

Aabb BoundingBox(const Primitive& primitive) {
  return std::visit(
      Overloaded{
          [](const Triangle& t) {
            return Aabb{t.a.cwiseMin(t.b).cwiseMin(t.c),
                        t.a.cwiseMax(t.b).cwiseMax(t.c)};
          },
          [](const Aabb& b) { return b; },
          [](const Cylinder& c) {
            // Per-axis disc extent: r * sqrt(1 - a_i^2).
            const Vec3 a = (c.p2 - c.p1).normalized();
            const Vec3 e =
                c.radius * (Vec3::Ones() - a.cwiseProduct(a)).cwiseMax(0.)
                               .cwiseSqrt();
            return Aabb{c.p1.cwiseMin(c.p2) - e, c.p1.cwiseMax(c.p2) + e};
          },
          [](const Prism& p) {
            Vec3 half = Vec3::Zero();
            for (int i = 0; i < 3; ++i) {
              half += (p.extents[i] / 2.) * p.axes[i].cwiseAbs();
            }
            return Aabb{p.center - half, p.center + half};
          },
      },
      primitive);
}

double DistanceToSurface(const Vec3& q, const Primitive& primitive) {
  return std::visit(
      Overloaded{
          [&](const Triangle& t) { return TriangleDistance(q, t); },
          [&](const Aabb& b) {
            const Vec3 center = (b.min + b.max) / 2.;
            return BoxSurfaceDistance(q - center, (b.max - b.min) / 2.);
          },
          [&](const Cylinder& c) { return CylinderDistance(q, c); },
          [&](const Prism& p) {
            const Vec3 rel = q - p.center;
            const Vec3 local(rel.dot(p.axes[0]), rel.dot(p.axes[1]),
                             rel.dot(p.axes[2]));
            const Vec3 half(p.extents[0] / 2., p.extents[1] / 2.,
                            p.extents[2] / 2.);
            return BoxSurfaceDistance(local, half);
          },
      },
      primitive);
}

}  // namespace geometry
}  // namespace vobench
