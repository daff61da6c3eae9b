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

#include "vobench/geometry/convex_hull.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace vobench {
namespace geometry {
namespace {

// Relative tolerance for deciding that the input spans three dimensions.
constexpr double kDegenerateRelTolerance = 1e-10;
// Relative tolerance for face visibility during insertion.
constexpr double kVisibleRelTolerance = 1e-12;
constexpr int kMaxRepairPasses = 4;

struct Face {
  std::array<int, 3> v;
  Vec3 normal;
  double offset;
  bool alive;
};

uint64_t EdgeKey(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

class HullBuilder {
 public:
  explicit HullBuilder(std::span<const Vec3> points) : points_(points) {
    Vec3 lo = points[0];
    Vec3 hi = points[0];
    for (const Vec3& p : points) {
      if (!p.allFinite()) {
        throw std::invalid_argument("convex hull input must be finite");
      }
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    lo_ = lo;
    hi_ = hi;
    scale_ = std::max((hi - lo).norm(), 1e-300);
    visible_eps_ = kVisibleRelTolerance * scale_;
  }

  void Build() {
    InitialSimplex();
    for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
      if (i == simplex_[0] || i == simplex_[1] || i == simplex_[2] ||
          i == simplex_[3]) {
        continue;
      }
      Insert(i, visible_eps_);
    }
    // Exact-membership post-check; re-insert any point that numerical error
    // left outside.
    for (int pass = 0; pass < kMaxRepairPasses; ++pass) {
      bool repaired = false;
      for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
        if (MaxViolation(points_[i]) > kHullTolerance) {
          Insert(i, 0.);
          repaired = true;
        }
      }
      if (!repaired) return;
    }
    throw std::runtime_error("convex hull failed membership post-check");
  }

  ConvexPolyhedron Result() const {
    std::vector<HalfSpace> spaces;
    for (const Face& f : faces_) {
      if (f.alive) spaces.push_back(HalfSpace{f.normal, f.offset});
    }
    std::sort(spaces.begin(), spaces.end(),
              [](const HalfSpace& a, const HalfSpace& b) {
                for (int i = 0; i < 3; ++i) {
                  if (a.normal[i] != b.normal[i]) {
                    return a.normal[i] < b.normal[i];
                  }
                }
                return a.offset < b.offset;
              });
    std::vector<HalfSpace> merged;
    for (const HalfSpace& h : spaces) {
      const bool duplicate = std::any_of(
          merged.rbegin(),
          merged.rbegin() + std::min<std::ptrdiff_t>(merged.size(), 8),
          [&](const HalfSpace& m) {
            return (m.normal - h.normal).cwiseAbs().maxCoeff() <=
                       kHullTolerance &&
                   std::abs(m.offset - h.offset) <= kHullTolerance;
          });
      if (!duplicate) merged.push_back(h);
    }
    const Vec3 pad = Vec3::Constant(kHullTolerance);
    return ConvexPolyhedron(std::move(merged), Aabb{lo_ - pad, hi_ + pad});
  }

 private:
  double MaxViolation(const Vec3& p) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Face& f : faces_) {
      if (f.alive) worst = std::max(worst, f.normal.dot(p) - f.offset);
    }
    return worst;
  }

  void InitialSimplex() {
    const int n = static_cast<int>(points_.size());
    int a = 0;
    for (int i = 1; i < n; ++i) {
      if (points_[i].x() < points_[a].x()) a = i;
    }
    int b = a;
    double best = -1.;
    for (int i = 0; i < n; ++i) {
      const double d = (points_[i] - points_[a]).squaredNorm();
      if (d > best) {
        best = d;
        b = i;
      }
    }
    const double tol = kDegenerateRelTolerance * scale_;
    if (std::sqrt(best) <= tol) {
      throw DegenerateHullError("convex hull input points coincide");
    }
    const Vec3 ab = (points_[b] - points_[a]).normalized();
    int c = a;
    best = -1.;
    for (int i = 0; i < n; ++i) {
      const double d = (points_[i] - points_[a]).cross(ab).norm();
      if (d > best) {
        best = d;
        c = i;
      }
    }
    if (best <= tol) {
      throw DegenerateHullError("convex hull input points are collinear");
    }
    const Vec3 normal =
        (points_[b] - points_[a]).cross(points_[c] - points_[a]).normalized();
    int d = a;
    best = -1.;
    for (int i = 0; i < n; ++i) {
      const double dist = std::abs((points_[i] - points_[a]).dot(normal));
      if (dist > best) {
        best = dist;
        d = i;
      }
    }
    if (best <= tol) {
      throw DegenerateHullError("convex hull input points are coplanar");
    }
    simplex_ = {a, b, c, d};
    // Orient so that d is behind face (a, b, c).
    if ((points_[d] - points_[a]).dot(normal) > 0.) std::swap(b, c);
    AddFace(a, b, c);
    AddFace(a, d, b);
    AddFace(b, d, c);
    AddFace(c, d, a);
  }

  void AddFace(int a, int b, int c) {
    const Vec3& pa = points_[a];
    const Vec3 normal =
        (points_[b] - pa).cross(points_[c] - pa).normalized();
    faces_.push_back(Face{{a, b, c}, normal, normal.dot(pa), true});
    const int index = static_cast<int>(faces_.size()) - 1;
    edges_[EdgeKey(a, b)] = index;
    edges_[EdgeKey(b, c)] = index;
    edges_[EdgeKey(c, a)] = index;
  }

  void Insert(int index, double eps) {
    const Vec3& p = points_[index];
    std::vector<int> visible;
    std::vector<char> is_visible(faces_.size(), 0);
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
      if (faces_[f].alive && faces_[f].normal.dot(p) - faces_[f].offset > eps) {
        visible.push_back(f);
        is_visible[f] = 1;
      }
    }
    if (visible.empty()) return;

    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const auto& v = faces_[f].v;
      for (int e = 0; e < 3; ++e) {
        const int from = v[e];
        const int to = v[(e + 1) % 3];
        const auto twin = edges_.find(EdgeKey(to, from));
        if (twin == edges_.end() || !is_visible[twin->second]) {
          horizon.emplace_back(from, to);
        }
      }
    }
    for (int f : visible) {
      faces_[f].alive = false;
      const auto& v = faces_[f].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edges_.find(EdgeKey(v[e], v[(e + 1) % 3]));
        if (it != edges_.end() && it->second == f) edges_.erase(it);
      }
    }
    for (const auto& [from, to] : horizon) AddFace(from, to, index);
    dead_ += static_cast<int>(visible.size());
    if (dead_ > static_cast<int>(faces_.size()) / 2) Compact();
  }

  void Compact() {
    std::vector<Face> alive;
    alive.reserve(faces_.size() - dead_);
    for (const Face& f : faces_) {
      if (f.alive) alive.push_back(f);
    }
    faces_.clear();
    edges_.clear();
    dead_ = 0;
    for (const Face& f : alive) AddFace(f.v[0], f.v[1], f.v[2]);
  }

  std::span<const Vec3> points_;
  Vec3 lo_;
  Vec3 hi_;
  double scale_ = 1.;
  double visible_eps_ = 0.;
  std::array<int, 4> simplex_{};
  std::vector<Face> faces_;
  int dead_ = 0;
  std::unordered_map<uint64_t, int> edges_;
};

}  // namespace

ConvexPolyhedron::ConvexPolyhedron(std::vector<HalfSpace> half_spaces,
                                   Aabb bounds)
    : half_spaces_(std::move(half_spaces)), bounds_(bounds) {}

bool ConvexPolyhedron::Contains(const Vec3& q) const {
  for (const HalfSpace& h : half_spaces_) {
    if (h.normal.dot(q) - h.offset > kHullTolerance) return false;
  }
  return true;
}

ConvexPolyhedron ConvexHull(std::span<const Vec3> points) {
  if (points.size() < 4) {
    throw DegenerateHullError("convex hull needs at least four points");
  }
  HullBuilder builder(points);
  builder.Build();
  return builder.Result();
}

}  // namespace geometry
}  // namespace vobench
