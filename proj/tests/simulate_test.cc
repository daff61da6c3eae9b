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


#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "vobench/geometry/ray.h"
#include "vobench/simulate/actor.h"
#include "vobench/simulate/episode.h"
#include "vobench/simulate/scene.h"
#include "vobench/simulate/sensor.h"

namespace vobench {
namespace simulate {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(ActorTest, RootFollowsEllipse) {
  const Vec3 c = CellCenter();
  EXPECT_TRUE(ActorRootAt(0.).isApprox(Vec3(c.x() + 2., c.y(), 0.)));
  EXPECT_NEAR((ActorRootAt(12.) - Vec3(c.x(), c.y() + 1., 0.)).norm(), 0.,
              1e-12);
  EXPECT_NEAR((ActorRootAt(96.) - ActorRootAt(0.)).norm(), 0., 1e-12);
  for (double t = 0.; t < 96.; t += 0.37) {
    const Vec3 d = ActorRootAt(t) - c;
    EXPECT_NEAR(d.x() * d.x() / 4. + d.y() * d.y(), 1., 1e-12);
  }
}

TEST(ActorTest, PoseHasAllJointsAndRejectsOutOfRange) {
  const ActorSkeleton pose = ActorPoseAt(5.);
  EXPECT_EQ(pose.joints.size(), JointNames().size());
  for (const std::string& name : JointNames()) {
    EXPECT_TRUE(pose.Find(name).has_value()) << name;
  }
  EXPECT_NEAR(pose.Find("Head")->z(), kActorHeight, 1e-12);
  EXPECT_THROW(ActorPoseAt(-0.1), std::out_of_range);
  EXPECT_THROW(ActorPoseAt(96.1), std::out_of_range);
}

TEST(ActorTest, FacesAlongTravelDirection) {
  for (double t : {0., 7., 20., 41.}) {
    const ActorSkeleton pose = ActorPoseAt(t);
    const Vec3 left = pose.Find("LHip").value() - pose.Find("RHip").value();
    const Vec3 forward = left.cross(Vec3::UnitZ()).normalized();
    const double theta = 2. * kPi * t / kLoopPeriod;
    const Vec3 velocity =
        Vec3(-2. * std::sin(theta), std::cos(theta), 0.).normalized();
    EXPECT_GT(forward.dot(velocity), 0.999);
  }
}

TEST(ActorTest, JointsLieInsideSegments) {
  const ActorSkeleton pose = ActorPoseAt(30.);
  const auto segments = SegmentPrimitives(pose);
  EXPECT_EQ(segments.size(), 11u);
  for (const Joint& joint : pose.joints) {
    EXPECT_TRUE(PointInSegments(joint.position, segments)) << joint.name;
  }
  EXPECT_FALSE(PointInSegments(CellCenter() + Vec3(0, 0, 2.2), segments));
}

TEST(ActorTest, GroundTruthMatchesBruteForce) {
  const auto segments = SegmentPrimitives(ActorPoseAt(17.));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(0., 4.), y(0., 2.8), z(0., 2.);
  std::vector<Vec3> points;
  for (int i = 0; i < 20000; ++i) points.emplace_back(x(rng), y(rng), z(rng));
  const auto gt = GroundTruthPoints(points, segments);
  std::vector<Vec3> expected;
  for (const Vec3& p : points) {
    for (const auto& s : segments) {
      const bool inside =
          std::holds_alternative<geometry::Cylinder>(s)
              ? oracle::CylinderContainsCanonical(
                    p, std::get<geometry::Cylinder>(s))
              : oracle::PrismContainsCanonical(p, std::get<geometry::Prism>(s));
      if (inside) {
        expected.push_back(p);
        break;
      }
    }
  }
  ASSERT_EQ(gt.size(), expected.size());
  EXPECT_GT(gt.size(), 0u);
  for (std::size_t i = 0; i < gt.size(); ++i) EXPECT_EQ(gt[i], expected[i]);
}

SensorModel WallCamera() {
  SensorModel camera;
  camera.id = 7;
  camera.kind = SensorKind::kDepthCamera;
  camera.noise_sigma = 0.;
  // Optical axis along +x, image x along -y, image y along -z.
  Eigen::Matrix3d axes;
  axes.col(0) = -Vec3::UnitY();
  axes.col(1) = -Vec3::UnitZ();
  axes.col(2) = Vec3::UnitX();
  camera.orientation = Eigen::Quaterniond(axes);
  return camera;
}

TEST(SensorTest, EmptySpaceYieldsNoPoints) {
  const geometry::RayScene empty(std::vector<geometry::Primitive>{});
  std::mt19937_64 rng(1);
  for (const SensorModel& s : DefaultSensors()) {
    const OrganizedCloud cloud = RenderSensor(s, empty, &rng);
    for (const auto& p : cloud.points) EXPECT_FALSE(p.has_value());
  }
}

TEST(SensorTest, CameraSeesWallAtUnitDepth) {
  const geometry::RayScene wall(std::vector<geometry::Primitive>{
      geometry::MakeAabb(Vec3(1, -10, -10), Vec3(1.5, 10, 10))});
  std::mt19937_64 rng(1);
  const SensorModel camera = WallCamera();
  const OrganizedCloud cloud = RenderSensor(camera, wall, &rng);
  ASSERT_EQ(cloud.width, 80);
  ASSERT_EQ(cloud.height, 60);
  for (const auto& p : cloud.points) {
    ASSERT_TRUE(p.has_value());
    EXPECT_NEAR(p->x(), 1., 1e-12);
  }
  const auto& center = cloud.points[30 * 80 + 40];
  const double fx = 40. / std::tan(30. * kPi / 180.);
  EXPECT_NEAR(center->y(), -0.5 / fx, 1e-12);
  const auto pooled = MeanPoolDownsample(cloud, 2);
  EXPECT_EQ(pooled.size(), 40u * 30u);
}

TEST(SensorTest, OcclusionMatchesNearestHitOracle) {
  const Scene scene = MakeDefaultScene();
  auto primitives = scene.primitives;
  for (const auto& s : SegmentPrimitives(ActorPoseAt(10.))) {
    primitives.push_back(s);
  }
  const geometry::RayScene world(primitives);
  std::mt19937_64 rng(2);
  for (SensorModel sensor : DefaultSensors()) {
    if (sensor.kind != SensorKind::kLidar) continue;
    sensor.noise_sigma = 0.;
    const auto dirs = LidarDirections(sensor);
    const OrganizedCloud cloud = RenderSensor(sensor, world, &rng);
    ASSERT_EQ(cloud.points.size(), dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto range =
          oracle::ExhaustiveNearestRange(sensor.position, dirs[i], primitives);
      const bool in_range = range && *range <= sensor.max_range;
      ASSERT_EQ(in_range, cloud.points[i].has_value());
      if (in_range) {
        EXPECT_NEAR((*cloud.points[i] - sensor.position).norm(), *range,
                    1e-9);
      }
    }
  }
}

TEST(SensorTest, NoiselessPointsLieOnSurfaces) {
  const Scene scene = MakeDefaultScene();
  const geometry::RayScene world(scene.primitives);
  std::mt19937_64 rng(3);
  for (SensorModel sensor : DefaultSensors()) {
    sensor.noise_sigma = 0.;
    for (const auto& p : RenderSensor(sensor, world, &rng).points) {
      if (!p) continue;
      double nearest = 1e9;
      for (const auto& prim : scene.primitives) {
        nearest = std::min(nearest, geometry::DistanceToSurface(*p, prim));
      }
      EXPECT_LT(nearest, 1e-9);
    }
  }
}

TEST(SensorTest, MeanPoolExamples) {
  OrganizedCloud cloud{2, 2, {Vec3(0, 0, 0), Vec3(2, 0, 0), std::nullopt,
                              Vec3(1, 3, 0)}};
  const auto pooled = MeanPoolDownsample(cloud, 2);
  ASSERT_EQ(pooled.size(), 1u);
  EXPECT_TRUE(pooled[0].isApprox(Vec3(1, 1, 0)));
  OrganizedCloud empty{2, 2, {std::nullopt, std::nullopt, std::nullopt,
                              std::nullopt}};
  EXPECT_TRUE(MeanPoolDownsample(empty, 2).empty());
  EXPECT_THROW(MeanPoolDownsample(cloud, 3), std::invalid_argument);
}

TEST(SensorTest, MeanPoolMatchesBlockOracle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1., 1.);
  std::bernoulli_distribution valid(0.7);
  OrganizedCloud cloud;
  cloud.width = 12;
  cloud.height = 6;
  for (int i = 0; i < 72; ++i) {
    if (valid(rng)) {
      cloud.points.emplace_back(Vec3(u(rng), u(rng), u(rng)));
    } else {
      cloud.points.emplace_back(std::nullopt);
    }
  }
  const auto pooled = MeanPoolDownsample(cloud, 3);
  std::vector<Vec3> expected;
  for (int block = 0; block < 8; ++block) {
    const int bx = (block % 4) * 3;
    const int by = (block / 4) * 3;
    std::vector<Vec3> members;
    for (int i = 0; i < 72; ++i) {
      const int x = i % 12;
      const int y = i / 12;
      if (x >= bx && x < bx + 3 && y >= by && y < by + 3 && cloud.points[i]) {
        members.push_back(*cloud.points[i]);
      }
    }
    if (members.empty()) continue;
    Vec3 mean = Vec3::Zero();
    for (const Vec3& m : members) mean += m / members.size();
    expected.push_back(mean);
  }
  ASSERT_EQ(pooled.size(), expected.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    EXPECT_NEAR((pooled[i] - expected[i]).norm(), 0., 1e-12);
  }
}

TEST(SensorTest, FrameCountsOverFullEpisode) {
  const auto sensors = DefaultSensors();
  ASSERT_EQ(sensors.size(), 4u);
  for (const SensorModel& s : sensors) {
    const auto stamps = FrameTimestamps(s, 96.);
    EXPECT_EQ(stamps.size(), s.kind == SensorKind::kLidar ? 960u : 2880u);
    for (std::size_t i = 1; i < stamps.size(); ++i) {
      EXPECT_LT(stamps[i - 1], stamps[i]);
    }
  }
  EXPECT_TRUE(FrameTimestamps(sensors[0], 0.).empty());
}

TEST(SensorTest, RejectsBadModels) {
  SensorModel s;
  s.rate_hz = 0.;
  EXPECT_THROW(ValidateSensor(s), std::invalid_argument);
  s = SensorModel{};
  s.kind = SensorKind::kDepthCamera;
  s.pool_factor = 3;
  EXPECT_THROW(ValidateSensor(s), std::invalid_argument);
  EXPECT_THROW(ParseSensorKind("radar"), std::invalid_argument);
}

std::string RecordToString(const ScenarioConfig& config) {
  std::ostringstream out;
  RecordEpisode(config, &out);
  return out.str();
}

TEST(EpisodeTest, SameSeedIsByteIdentical) {
  ScenarioConfig config;
  config.duration_s = 0.5;
  config.seed = 11;
  const std::string a = RecordToString(config);
  EXPECT_EQ(a, RecordToString(config));
  config.seed = 12;
  EXPECT_NE(a, RecordToString(config));
}

TEST(EpisodeTest, ZeroDurationIsHeaderOnly) {
  ScenarioConfig config;
  config.duration_s = 0.;
  const std::string path = testing::TempDir() + "/empty.voep";
  RecordEpisode(config, path);
  EpisodeReader reader(path);
  EXPECT_EQ(reader.header().sensors.size(), 4u);
  EXPECT_FALSE(reader.Next().has_value());
}

TEST(EpisodeTest, RoundTripsThroughReader) {
  ScenarioConfig config;
  config.duration_s = 1.;
  config.seed = 5;
  const std::string path = testing::TempDir() + "/short.voep";
  RecordEpisode(config, path);
  EpisodeReader reader(path);
  EXPECT_EQ(reader.header().seed, 5u);
  EXPECT_EQ(reader.header().scene_hash,
            SceneHash(MakeDefaultScene().primitives));
  EXPECT_DOUBLE_EQ(reader.header().spec.resolution, config.spec.resolution);
  int frames[4] = {0, 0, 0, 0};
  int poses = 0;
  uint64_t last = 0;
  uint64_t last_pose = 0;
  bool any_pose = false;
  while (auto record = reader.Next()) {
    if (auto* frame = std::get_if<SensorFrame>(&*record)) {
      ASSERT_LT(frame->sensor_id, 4);
      ++frames[frame->sensor_id];
      EXPECT_GE(frame->timestamp_ns, last);
      // Every frame is preceded by a skeleton at the same instant.
      ASSERT_TRUE(any_pose);
      EXPECT_EQ(last_pose, frame->timestamp_ns);
      EXPECT_FALSE(frame->points.empty());
      last = frame->timestamp_ns;
    } else {
      const auto& pose = std::get<SkeletonPose>(*record);
      EXPECT_EQ(pose.skeleton.joints.size(), JointNames().size());
      last_pose = pose.timestamp_ns;
      any_pose = true;
      ++poses;
    }
  }
  EXPECT_EQ(frames[0], 10);
  EXPECT_EQ(frames[1], 10);
  EXPECT_EQ(frames[2], 10);
  EXPECT_EQ(frames[3], 30);
  // LiDAR phases land on camera ticks, so instants are shared.
  EXPECT_EQ(poses, 30);
}

TEST(EpisodeTest, HeaderJsonRoundTrip) {
  EpisodeHeader header;
  header.spec = grid::GridSpec{Vec3(0.1, -0.2, 0.3), 0.05};
  header.scene_hash = 0xfedcba9876543210ull;
  header.seed = 99;
  header.duration_s = 12.5;
  header.sensors = DefaultSensors();
  const EpisodeHeader back = HeaderFromJson(HeaderToJson(header));
  EXPECT_EQ(back.scene_hash, header.scene_hash);
  EXPECT_EQ(HeaderToJson(back), HeaderToJson(header));
  EXPECT_THROW(HeaderFromJson("{}"), std::runtime_error);
}

TEST(EpisodeTest, RejectsBadFiles) {
  const std::string path = testing::TempDir() + "/garbage.voep";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fputs("nope", f);
  std::fclose(f);
  EXPECT_THROW(EpisodeReader reader(path), std::runtime_error);
  EXPECT_THROW(EpisodeReader reader(path + ".missing"), std::runtime_error);
}

TEST(EpisodeTest, RejectsBadScenario) {
  ScenarioConfig config;
  config.duration_s = -1.;
  EXPECT_THROW(ValidateScenario(config), std::invalid_argument);
  config = ScenarioConfig{};
  config.sensors[1].id = config.sensors[0].id;
  EXPECT_THROW(ValidateScenario(config), std::invalid_argument);
}

}  // namespace
}  // namespace simulate
}  // namespace vobench
