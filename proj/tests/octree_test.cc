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


#include "vobench/map/octree_map.h"

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace vobench {
namespace map {
namespace {

using grid::GridSpec;
using grid::VoxelKey;

const GridSpec kSpec{Vec3::Zero(), 0.1};

std::set<VoxelKey> ToSet(const grid::VoxelSet& s) {
  return std::set<VoxelKey>(s.begin(), s.end());
}

TEST(LogOddsIncrementTest, Examples) {
  EXPECT_DOUBLE_EQ(LogOddsIncrement(0.5), 0.);
  EXPECT_NEAR(LogOddsIncrement(0.7), 0.8473, 1e-4);
  EXPECT_NEAR(LogOddsIncrement(0.4), -0.4055, 1e-4);
  EXPECT_TRUE(std::isinf(LogOddsIncrement(1.)));
  EXPECT_THROW(LogOddsIncrement(0.), std::invalid_argument);
  EXPECT_THROW(LogOddsIncrement(-0.1), std::invalid_argument);
  EXPECT_THROW(LogOddsIncrement(1.1), std::invalid_argument);
}

TEST(OctreeMapTest, RejectsInvalidOptions) {
  OctreeOptions options;
  options.miss_prob = 1.;
  EXPECT_THROW(OctreeMap(kSpec, options), std::invalid_argument);
  options = OctreeOptions{};
  options.clamp_min = 4.;
  EXPECT_THROW(OctreeMap(kSpec, options), std::invalid_argument);
}

TEST(OctreeMapTest, DepthCoversDomain) {
  EXPECT_EQ(OctreeMap(kSpec, {}).depth(), 7);
  EXPECT_EQ(OctreeMap(GridSpec{Vec3::Zero(), 0.05}, {}).depth(), 8);
  const OctreeMap map(kSpec, {});
  EXPECT_TRUE(map.InRange({-45, -45, -45}));
  EXPECT_TRUE(map.InRange({44, 32, 27}));
  EXPECT_FALSE(map.InRange({64, 0, 0}));
}

TEST(OctreeMapTest, EmptyCloudLeavesMapUnchanged) {
  OctreeMap map(kSpec, {});
  map.Integrate(Vec3(1, 1, 1), {});
  EXPECT_EQ(map.NumNodes(), 0u);
  EXPECT_TRUE(map.OccupiedVoxels().empty());
}

TEST(OctreeMapTest, SingleHitSaturatesEndpointAndMissesRay) {
  OctreeMap map(kSpec, {});
  const std::vector<Vec3> cloud{Vec3(1.05, 0.55, 0.55)};
  map.Integrate(Vec3(0.55, 0.55, 0.55), cloud);
  EXPECT_DOUBLE_EQ(*map.LogOdds({10, 5, 5}), 3.5);
  for (int i = 5; i < 10; ++i) {
    EXPECT_NEAR(*map.LogOdds({i, 5, 5}), -0.4055, 1e-4);
  }
  EXPECT_FALSE(map.LogOdds({11, 5, 5}).has_value());
  EXPECT_EQ(ToSet(map.OccupiedVoxels()), (std::set<VoxelKey>{{10, 5, 5}}));
}

TEST(OctreeMapTest, OneMissDoesNotClearAModerateHit) {
  OctreeOptions options;
  options.hit_prob = 0.7;
  OctreeMap map(kSpec, options);
  const Vec3 origin(0.05, 0.05, 0.05);
  map.Integrate(origin, std::vector<Vec3>{Vec3(0.35, 0.05, 0.05)});
  map.Integrate(origin, std::vector<Vec3>{Vec3(0.55, 0.05, 0.05)});
  EXPECT_NEAR(*map.LogOdds({3, 0, 0}), 0.8473 - 0.4055, 1e-4);
  EXPECT_TRUE(map.OccupiedVoxels().contains({3, 0, 0}));
}

TEST(OctreeMapTest, HitWinsOverMissWithinOneCall) {
  OctreeMap map(kSpec, {});
  // The second ray passes through the first endpoint.
  const std::vector<Vec3> cloud{Vec3(0.35, 0.05, 0.05),
                                Vec3(0.75, 0.05, 0.05)};
  map.Integrate(Vec3(0.05, 0.05, 0.05), cloud);
  EXPECT_DOUBLE_EQ(*map.LogOdds({3, 0, 0}), 3.5);
  EXPECT_NEAR(*map.LogOdds({1, 0, 0}), -0.4055, 1e-4);
}

TEST(OctreeMapTest, HalfHitProbabilityNeverOccupies) {
  OctreeOptions options;
  options.hit_prob = 0.5;
  OctreeMap map(kSpec, options);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0., 2.);
  for (int call = 0; call < 20; ++call) {
    std::vector<Vec3> cloud;
    for (int i = 0; i < 50; ++i) cloud.emplace_back(u(rng), u(rng), u(rng));
    map.Integrate(Vec3(1, 1, 1), cloud);
  }
  EXPECT_TRUE(map.OccupiedVoxels().empty());
}

TEST(OctreeMapTest, EightSaturatedSiblingsMerge) {
  OctreeMap map(kSpec, {});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) map.UpdateVoxel({i, j, k}, 10.);
    }
  }
  int blocks = 0;
  map.ForEachLeaf([&](const VoxelKey& min_key, int size, double value) {
    ++blocks;
    EXPECT_EQ(min_key, (VoxelKey{0, 0, 0}));
    EXPECT_EQ(size, 2);
    EXPECT_DOUBLE_EQ(value, 3.5);
  });
  EXPECT_EQ(blocks, 1);
  EXPECT_EQ(map.OccupiedVoxels().size(), 8u);
  // Touching one voxel splits the block again.
  map.UpdateVoxel({1, 1, 1}, -10.);
  EXPECT_EQ(map.OccupiedVoxels().size(), 7u);
  EXPECT_DOUBLE_EQ(*map.LogOdds({1, 1, 1}), -2.);
}

TEST(OctreeMapTest, MixedSiblingsStay) {
  OctreeOptions options;
  options.prune_on_update = false;
  OctreeMap map(kSpec, options);
  for (int c = 0; c < 8; ++c) {
    map.UpdateVoxel({c & 1, (c >> 1) & 1, (c >> 2) & 1}, c == 0 ? 1. : 10.);
  }
  map.Prune();
  int leaves = 0;
  map.ForEachLeaf([&](const VoxelKey&, int size, double) {
    EXPECT_EQ(size, 1);
    ++leaves;
  });
  EXPECT_EQ(leaves, 8);
}

std::vector<Vec3> RandomCloud(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0., 1.6);
  std::vector<Vec3> cloud;
  for (int i = 0; i < n; ++i) cloud.emplace_back(u(rng), u(rng), u(rng));
  return cloud;
}

TEST(OctreeMapTest, MatchesReferenceLogOdds) {
  for (double hit : {1., 0.7}) {
    std::mt19937_64 rng(hit == 1. ? 21 : 22);
    OctreeOptions options;
    options.hit_prob = hit;
    OctreeMap map(kSpec, options);
    oracle::ReferenceLogOdds reference(kSpec, hit, 0.4, -2., 3.5);
    for (int call = 0; call < 30; ++call) {
      const Vec3 origin = RandomCloud(rng, 1)[0];
      const auto cloud = RandomCloud(rng, 40);
      map.Integrate(origin, cloud);
      reference.Integrate(origin, cloud);
      ASSERT_EQ(ToSet(map.OccupiedVoxels()), reference.Occupied());
    }
    for (const auto& [key, value] : reference.values()) {
      ASSERT_EQ(*map.LogOdds(key), value);
      ASSERT_GE(value, -2.);
      ASSERT_LE(value, 3.5);
    }
    std::size_t stored = 0;
    map.ForEachLeaf([&](const VoxelKey&, int size, double value) {
      stored += static_cast<std::size_t>(size) * size * size;
      EXPECT_GE(value, -2.);
      EXPECT_LE(value, 3.5);
    });
    EXPECT_EQ(stored, reference.values().size());
    EXPECT_EQ(map.CountPrunableNodes(), 0u);
    EXPECT_TRUE(map.ChildCountsValid());
  }
}

TEST(OctreeMapTest, PruneKeepsOccupiedSet) {
  OctreeOptions options;
  options.prune_on_update = false;
  std::mt19937_64 rng(31);
  std::size_t merged = 0;
  for (int sequence = 0; sequence < 20; ++sequence) {
    OctreeMap map(kSpec, options);
    for (int call = 0; call < 10; ++call) {
      map.Integrate(RandomCloud(rng, 1)[0], RandomCloud(rng, 60));
    }
    const auto before = ToSet(map.OccupiedVoxels());
    const std::size_t nodes = map.NumNodes();
    merged += map.CountPrunableNodes();
    map.Prune();
    EXPECT_EQ(ToSet(map.OccupiedVoxels()), before);
    EXPECT_EQ(map.CountPrunableNodes(), 0u);
    EXPECT_LE(map.NumNodes(), nodes);
    EXPECT_TRUE(map.ChildCountsValid());
  }
  EXPECT_GT(merged, 0u);
}

TEST(OctreeMapTest, ResetClears) {
  OctreeMap map(kSpec, {});
  map.Integrate(Vec3(0.5, 0.5, 0.5), std::vector<Vec3>{Vec3(1, 1, 1)});
  map.Reset();
  EXPECT_TRUE(map.OccupiedVoxels().empty());
  EXPECT_EQ(map.NumNodes(), 0u);
}

}  // namespace
}  // namespace map
}  // namespace vobench
