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

// Independent reference implementations used only by tests. None of these
// call into the code paths they check.

#ifndef VOBENCH_TESTS_ORACLES_H_
#define VOBENCH_TESTS_ORACLES_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "Eigen/Geometry"
#include "vobench/geometry/primitives.h"
#include "vobench/geometry/ray.h"
#include "vobench/grid/grid.h"

namespace vobench {
namespace oracle {

using geometry::Vec3;

inline Eigen::Quaterniond RandomRotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0., 1.);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q;
}

// Rotate the cylinder axis onto +z and test in that frame.
inline bool CylinderContainsCanonical(const Vec3& q,
                                      const geometry::Cylinder& c) {
  const Vec3 axis = c.p2 - c.p1;
  const Eigen::Quaterniond to_z =
      Eigen::Quaterniond::FromTwoVectors(axis, Vec3::UnitZ());
  const Vec3 local = to_z * (q - c.p1);
  const double length = axis.norm();
  return local.z() >= 0. && local.z() <= length &&
         local.head<2>().norm() <= c.radius;
}

// Express q in the prism frame via an isometry and test an aligned box.
inline bool PrismContainsCanonical(const Vec3& q, const geometry::Prism& p) {
  Eigen::Matrix3d rotation;
  rotation.col(0) = p.axes[0];
  rotation.col(1) = p.axes[1];
  rotation.col(2) = p.axes[2];
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  pose.linear() = rotation;
  pose.translation() = p.center;
  const Vec3 local = pose.inverse() * q;
  const Vec3 half(p.extents[0] / 2., p.extents[1] / 2., p.extents[2] / 2.);
  return Eigen::AlignedBox3d(-half, half).contains(local);
}

// Nearest hit by testing each primitive on its own.
inline std::optional<double> ExhaustiveNearestRange(
    const Vec3& origin, const Vec3& dir,
    const std::vector<geometry::Primitive>& scene) {
  std::optional<double> best;
  for (const auto& primitive : scene) {
    const auto range = geometry::IntersectPrimitive(origin, dir, primitive);
    if (range && (!best || *range < *best)) best = range;
  }
  return best;
}

inline std::tuple<int, int, int> FloorKey(const Vec3& p, double res) {
  return {static_cast<int>(std::floor(p.x() / res)),
          static_cast<int>(std::floor(p.y() / res)),
          static_cast<int>(std::floor(p.z() / res))};
}

// Voxels visited by sampling a segment at a fine step, excluding the voxel
// that contains the end point (origin of the grid at zero).
inline std::set<std::tuple<int, int, int>> SampledRayVoxels(const Vec3& origin,
                                                            const Vec3& end,
                                                            double res) {
  std::set<std::tuple<int, int, int>> visited;
  const auto end_key = FloorKey(end, res);
  const double length = (end - origin).norm();
  const double step = res / 100.;
  const int samples = static_cast<int>(std::ceil(length / step));
  for (int s = 0; s <= samples; ++s) {
    const double t = std::min(1., s * step / length);
    const auto key = FloorKey(origin + t * (end - origin), res);
    if (key != end_key) visited.insert(key);
  }
  return visited;
}

// Slab test of a segment against the closed voxel cube, padded by eps.
inline bool SegmentTouchesVoxel(const Vec3& a, const Vec3& b,
                                const std::tuple<int, int, int>& key,
                                double res, double eps = 1e-9) {
  const Vec3 lo = Vec3(std::get<0>(key), std::get<1>(key), std::get<2>(key)) *
                      res - Vec3::Constant(eps);
  const Vec3 hi = lo + Vec3::Constant(res + 2 * eps);
  double t0 = 0., t1 = 1.;
  for (int axis = 0; axis < 3; ++axis) {
    const double d = b[axis] - a[axis];
    if (d == 0.) {
      if (a[axis] < lo[axis] || a[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - a[axis]) / d;
    double tb = (hi[axis] - a[axis]) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  return t0 <= t1;
}

// All-pairs nearest obstacle distance, in voxel units squared.
inline std::vector<int64_t> BruteForceSquaredDistances(
    const std::vector<char>& occupied, int nx, int ny, int nz) {
  std::vector<std::array<int, 3>> obstacles;
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      for (int z = 0; z < nz; ++z) {
        if (occupied[(x * ny + y) * nz + z]) obstacles.push_back({x, y, z});
      }
    }
  }
  std::vector<int64_t> out(occupied.size(),
                           std::numeric_limits<int64_t>::max());
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      for (int z = 0; z < nz; ++z) {
        int64_t best = std::numeric_limits<int64_t>::max();
        for (const auto& o : obstacles) {
          const int64_t dx = x - o[0];
          const int64_t dy = y - o[1];
          const int64_t dz = z - o[2];
          best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
        out[(x * ny + y) * nz + z] = best;
      }
    }
  }
  return out;
}


// Occupancy log-odds kept in a plain ordered map, updated with the same
// per-call rule as the octree: one hit per endpoint voxel, one miss per
// traversed voxel not hit in the call, clamped running sums.
class ReferenceLogOdds {
 public:
  ReferenceLogOdds(const grid::GridSpec& spec, double hit_prob,
                   double miss_prob, double lo, double hi)
      : spec_(spec),
        hit_(hit_prob == 1. ? std::numeric_limits<double>::infinity()
                            : std::log(hit_prob / (1. - hit_prob))),
        miss_(std::log(miss_prob / (1. - miss_prob))),
        lo_(lo),
        hi_(hi) {}

  void Integrate(const Vec3& origin, const std::vector<Vec3>& cloud) {
    std::map<grid::VoxelKey, bool> touched;
    for (const Vec3& p : cloud) touched[grid::Quantize(p, spec_)] = true;
    for (const Vec3& p : cloud) {
      for (const auto& key : grid::TraverseRay(origin, p, spec_)) {
        touched.emplace(key, false);
      }
    }
    for (const auto& [key, hit] : touched) Apply(key, hit ? hit_ : miss_);
  }

  void Apply(const grid::VoxelKey& key, double delta) {
    double& value = values_[key];
    value = std::min(hi_, std::max(lo_, value + delta));
  }

  std::set<grid::VoxelKey> Occupied() const {
    std::set<grid::VoxelKey> out;
    for (const auto& [key, value] : values_) {
      if (value > 0.) out.insert(key);
    }
    return out;
  }

  const std::map<grid::VoxelKey, double>& values() const { return values_; }

 private:
  grid::GridSpec spec_;
  double hit_, miss_, lo_, hi_;
  std::map<grid::VoxelKey, double> values_;
};

// Sorted vector of (key, value) pairs with ordered-map semantics.
template <class K, class V>
class SortedArrayMap {
 public:
  void Insert(const K& k, const V& v) {
    auto it = LowerBound(k);
    if (it != data_.end() && it->first == k) {
      it->second = v;
    } else {
      data_.insert(it, {k, v});
    }
  }
  std::optional<V> Find(const K& k) const {
    auto it = std::lower_bound(
        data_.begin(), data_.end(), k,
        [](const std::pair<K, V>& e, const K& key) { return e.first < key; });
    if (it != data_.end() && it->first == k) return it->second;
    return std::nullopt;
  }
  bool Erase(const K& k) {
    auto it = LowerBound(k);
    if (it == data_.end() || it->first != k) return false;
    data_.erase(it);
    return true;
  }
  const std::vector<std::pair<K, V>>& data() const { return data_; }

 private:
  typename std::vector<std::pair<K, V>>::iterator LowerBound(const K& k) {
    return std::lower_bound(
        data_.begin(), data_.end(), k,
        [](const std::pair<K, V>& e, const K& key) { return e.first < key; });
  }
  std::vector<std::pair<K, V>> data_;
};

}  // namespace oracle
}  // namespace vobench

#endif  // VOBENCH_TESTS_ORACLES_H_
