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


#include "vobench/simulate/actor.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "vobench/simulate/scene.h"

namespace vobench {
namespace simulate {
namespace {

// Actor frame: x forward, y left, z up, origin on the floor under the
// pelvis.
struct JointSpec {
  const char* name;
  double x, y, z;
};

constexpr JointSpec kJoints[] = {
    {"Head", 0., 0., 1.75},         {"Neck", 0., 0., 1.50},
    {"Spine", 0., 0., 1.22},        {"LowerBack", 0., 0., 0.95},
    {"LShoulder", 0., 0.22, 1.45},  {"LElbow", 0., 0.25, 1.17},
    {"LWrist", 0.05, 0.25, 0.90},   {"RShoulder", 0., -0.22, 1.45},
    {"RElbow", 0., -0.25, 1.17},    {"RWrist", 0.05, -0.25, 0.90},
    {"LHip", 0., 0.10, 0.95},       {"LKnee", 0.02, 0.10, 0.52},
    {"LAnkle", 0., 0.10, 0.10},     {"RHip", 0., -0.10, 0.95},
    {"RKnee", 0.02, -0.10, 0.52},   {"RAnkle", 0., -0.10, 0.10},
};

constexpr std::pair<const char*, const char*> kLimbs[] = {
    {"Neck", "Head"},        {"LShoulder", "LElbow"}, {"LElbow", "LWrist"},
    {"RShoulder", "RElbow"}, {"RElbow", "RWrist"},    {"LHip", "LKnee"},
    {"LKnee", "LAnkle"},     {"RHip", "RKnee"},       {"RKnee", "RAnkle"},
};

constexpr std::pair<const char*, const char*> kTorso[] = {
    {"LowerBack", "Spine"},
    {"Spine", "Neck"},
};

Vec3 Require(const ActorSkeleton& skeleton, const char* name) {
  const auto p = skeleton.Find(name);
  if (!p) throw std::invalid_argument(std::string("missing joint ") + name);
  return *p;
}

}  // namespace

std::optional<Vec3> ActorSkeleton::Find(const std::string& name) const {
  for (const Joint& joint : joints) {
    if (joint.name == name) return joint.position;
  }
  return std::nullopt;
}

const std::vector<std::string>& JointNames() {
  static const auto* names = [] {
    auto* out = new std::vector<std::string>;
    for (const JointSpec& j : kJoints) out->push_back(j.name);
    return out;
  }();
  return *names;
}

Vec3 ActorRootAt(double t) {
  const double theta = 2. * std::numbers::pi * t / kLoopPeriod;
  return CellCenter() + Vec3(kEllipseMajor * std::cos(theta),
                             kEllipseMinor * std::sin(theta), 0.);
}

ActorSkeleton ActorPoseAt(double t, double duration) {
  if (!(t >= 0. && t <= duration)) {
    throw std::out_of_range("actor time outside episode");
  }
  const double theta = 2. * std::numbers::pi * t / kLoopPeriod;
  // Tangent of the ellipse; the actor walks counter-clockwise.
  const double yaw = std::atan2(kEllipseMinor * std::cos(theta),
                                -kEllipseMajor * std::sin(theta));
  const Eigen::AngleAxisd rotation(yaw, Vec3::UnitZ());
  const Vec3 root = ActorRootAt(t);
  ActorSkeleton skeleton;
  for (const JointSpec& j : kJoints) {
    skeleton.joints.push_back({j.name, root + rotation * Vec3(j.x, j.y, j.z)});
  }
  return skeleton;
}

std::vector<geometry::Primitive> SegmentPrimitives(
    const ActorSkeleton& skeleton) {
  std::vector<geometry::Primitive> out;
  for (const auto& [a, b] : kLimbs) {
    out.push_back(geometry::MakeCylinder(Require(skeleton, a),
                                         Require(skeleton, b), kLimbRadius));
  }
  const Vec3 lateral = Require(skeleton, "LHip") - Require(skeleton, "RHip");
  for (const auto& [a, b] : kTorso) {
    const Vec3 pa = Require(skeleton, a);
    const Vec3 pb = Require(skeleton, b);
    const Vec3 up = (pb - pa).normalized();
    const Vec3 forward = lateral.cross(up).normalized();
    const Vec3 left = up.cross(forward);
    out.push_back(geometry::MakePrism((pa + pb) / 2., {forward, left, up},
                                      {kTorsoDepth, kTorsoWidth,
                                       (pb - pa).norm()}));
  }
  return out;
}

bool PointInSegments(const Vec3& p,
                     std::span<const geometry::Primitive> segments) {
  for (const auto& segment : segments) {
    if (const auto* c = std::get_if<geometry::Cylinder>(&segment)) {
      if (geometry::PointInCylinder(p, *c)) return true;
    } else if (const auto* r = std::get_if<geometry::Prism>(&segment)) {
      if (geometry::PointInPrism(p, *r)) return true;
    }
  }
  return false;
}

std::vector<Vec3> GroundTruthPoints(
    std::span<const Vec3> points,
    std::span<const geometry::Primitive> segments) {
  std::vector<geometry::Aabb> boxes;
  for (const auto& s : segments) boxes.push_back(geometry::BoundingBox(s));
  geometry::Aabb all = boxes.empty()
                           ? geometry::Aabb{Vec3::Zero(), -Vec3::Ones()}
                           : boxes.front();
  for (const auto& b : boxes) {
    all.min = all.min.cwiseMin(b.min);
    all.max = all.max.cwiseMax(b.max);
  }
  std::vector<Vec3> out;
  for (const Vec3& p : points) {
    if ((p.array() < all.min.array()).any() ||
        (p.array() > all.max.array()).any()) {
      continue;
    }
    if (PointInSegments(p, segments)) out.push_back(p);
  }
  return out;
}

}  // namespace simulate
}  // namespace vobench
