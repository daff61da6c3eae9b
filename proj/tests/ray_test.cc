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

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace vobench {
namespace geometry {
namespace {

TEST(RayIntersectTest, AxisAlignedBox) {
  const std::vector<Primitive> scene{MakeAabb(Vec3(2, -1, -1), Vec3(3, 1, 1))};
  const auto hit = RayIntersect(Vec3::Zero(), Vec3::UnitX(), scene);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(hit->range, 2., 1e-12);
  EXPECT_NEAR((hit->point - Vec3(2, 0, 0)).norm(), 0., 1e-12);
  EXPECT_FALSE(RayIntersect(Vec3::Zero(), -Vec3::UnitX(), scene).has_value());
}

TEST(RayIntersectTest, CylinderSideAndCap) {
  const std::vector<Primitive> scene{
      MakeCylinder(Vec3(0, 0, 0), Vec3(0, 0, 1), 0.1)};
  const auto side = RayIntersect(Vec3(-1, 0, 0.5), Vec3::UnitX(), scene);
  ASSERT_TRUE(side.has_value());
  EXPECT_NEAR(side->range, 0.9, 1e-12);
  const auto cap = RayIntersect(Vec3(0.05, 0, 2), -Vec3::UnitZ(), scene);
  ASSERT_TRUE(cap.has_value());
  EXPECT_NEAR(cap->range, 1., 1e-12);
  EXPECT_FALSE(
      RayIntersect(Vec3(-1, 0, 1.5), Vec3::UnitX(), scene).has_value());
}

TEST(RayIntersectTest, RotatedPrism) {
  const double s = std::sqrt(0.5);
  const std::vector<Primitive> scene{
      MakePrism(Vec3(2, 0, 0), {Vec3(s, s, 0), Vec3(-s, s, 0), Vec3::UnitZ()},
                {1., 1., 1.})};
  const auto hit = RayIntersect(Vec3::Zero(), Vec3::UnitX(), scene);
  ASSERT_TRUE(hit.has_value());
  // Diamond corner at x = 2 - sqrt(2)/2.
  EXPECT_NEAR(hit->range, 2. - s, 1e-12);
}

TEST(RayIntersectTest, RejectsNonUnitDirection) {
  const std::vector<Primitive> scene;
  EXPECT_THROW(RayIntersect(Vec3::Zero(), Vec3(2, 0, 0), scene),
               std::invalid_argument);
}

std::vector<Primitive> RandomSoup(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2., 2.);
  std::uniform_real_distribution<double> small(-0.4, 0.4);
  std::vector<Primitive> scene;
  for (int i = 0; i < 60; ++i) {
    const Vec3 a(u(rng), u(rng), u(rng));
    scene.push_back(Triangle{a, a + Vec3(small(rng), small(rng), small(rng)),
                             a + Vec3(small(rng), small(rng), small(rng))});
  }
  for (int i = 0; i < 5; ++i) {
    const Vec3 a(u(rng), u(rng), u(rng));
    scene.push_back(MakeCylinder(
        a, a + Vec3(small(rng), small(rng), 0.5 + small(rng)), 0.1));
    const Vec3 c(u(rng), u(rng), u(rng));
    scene.push_back(MakeAabb(c, c + Vec3(0.3, 0.2, 0.1)));
  }
  return scene;
}

TEST(RayIntersectTest, NearestHitMatchesExhaustiveOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0., 1.);
  const std::vector<Primitive> scene = RandomSoup(rng);
  const RayScene culled(scene);
  std::uniform_int_distribution<std::size_t> pick(0, scene.size() - 1);
  int hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 origin = Vec3(n(rng), n(rng), n(rng)) * 3.;
    // Aim at a random primitive so a good share of rays hit something.
    const Aabb box = BoundingBox(scene[pick(rng)]);
    const Vec3 target = 0.5 * (box.min + box.max);
    const Vec3 dir = (target - origin + 0.05 * Vec3(n(rng), n(rng), n(rng)))
                         .normalized();
    const auto expected = oracle::ExhaustiveNearestRange(origin, dir, scene);
    const auto hit = RayIntersect(origin, dir, scene);
    const auto culled_hit = culled.Intersect(origin, dir, 1e9);
    ASSERT_EQ(expected.has_value(), hit.has_value());
    ASSERT_EQ(expected.has_value(), culled_hit.has_value());
    if (expected) {
      ++hits;
      EXPECT_DOUBLE_EQ(*expected, hit->range);
      EXPECT_DOUBLE_EQ(*expected, culled_hit->range);
      EXPECT_GT(hit->range, 0.);
    }
  }
  EXPECT_GT(hits, 300);
}

TEST(RayIntersectTest, SinglePrimitiveNeverCloserThanScene) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0., 1.);
  const std::vector<Primitive> scene = RandomSoup(rng);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec3 origin = Vec3(n(rng), n(rng), n(rng)) * 3.;
    const Vec3 dir = Vec3(n(rng), n(rng), n(rng)).normalized();
    const auto full = RayIntersect(origin, dir, scene);
    for (const Primitive& p : scene) {
      const auto single = RayIntersect(origin, dir, std::span(&p, 1));
      if (single) {
        ASSERT_TRUE(full.has_value());
        EXPECT_GE(single->range, full->range);
      }
    }
  }
}

TEST(RayIntersectTest, HitPointsLieOnSurface) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0., 1.);
  const std::vector<Primitive> scene = RandomSoup(rng);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 origin = Vec3(n(rng), n(rng), n(rng)) * 3.;
    const Vec3 dir = Vec3(n(rng), n(rng), n(rng)).normalized();
    const auto hit = RayIntersect(origin, dir, scene);
    if (hit) {
      EXPECT_LT(DistanceToSurface(hit->point, scene[hit->primitive]), 1e-9);
    }
  }
}

}  // namespace
}  // namespace geometry
}  // namespace vobench
