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


#include "vobench/simulate/scene.h"

#include <bit>
#include <variant>

#include "vobench/common/overloaded.h"

namespace vobench {
namespace simulate {

geometry::Aabb CellBounds() {
  return {Vec3::Zero(), Vec3(kCellLength, kCellWidth, kCellHeight)};
}

Scene MakeDefaultScene() {
  using geometry::MakeAabb;
  Scene scene;
  const double l = kCellLength;
  const double w = kCellWidth;
  const double h = kCellHeight;
  // Floor as two triangles at z = 0.
  scene.primitives.push_back(
      geometry::Triangle{Vec3(0, 0, 0), Vec3(l, 0, 0), Vec3(l, w, 0)});
  scene.primitives.push_back(
      geometry::Triangle{Vec3(0, 0, 0), Vec3(l, w, 0), Vec3(0, w, 0)});
  // Central plate, 0.8 x 0.6 x 1.0.
  const Vec3 c = CellCenter();
  scene.primitives.push_back(
      MakeAabb(c + Vec3(-0.4, -0.3, 0.), c + Vec3(0.4, 0.3, 1.0)));
  // Gantry legs.
  const double t = 0.1;
  for (double x : {0., l - t}) {
    for (double y : {0., w - t}) {
      scene.primitives.push_back(MakeAabb(Vec3(x, y, 0), Vec3(x + t, y + t, h)));
    }
  }
  // Top frame.
  scene.primitives.push_back(MakeAabb(Vec3(t, 0, h - t), Vec3(l - t, t, h)));
  scene.primitives.push_back(
      MakeAabb(Vec3(t, w - t, h - t), Vec3(l - t, w, h)));
  scene.primitives.push_back(MakeAabb(Vec3(0, t, h - t), Vec3(t, w - t, h)));
  scene.primitives.push_back(
      MakeAabb(Vec3(l - t, t, h - t), Vec3(l, w - t, h)));
  return scene;
}

namespace {

class Fnv1a {
 public:
  void Add(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xFFu;
      hash_ *= 0x100000001B3ull;
    }
  }
  void Add(double v) { Add(std::bit_cast<uint64_t>(v)); }
  void Add(const Vec3& v) {
    Add(v.x());
    Add(v.y());
    Add(v.z());
  }
  uint64_t value() const { return hash_; }

 private:
  uint64_t hash_ = 0xCBF29CE484222325ull;
};

}  // namespace

uint64_t SceneHash(std::span<const geometry::Primitive> primitives) {
  Fnv1a fnv;
  for (const auto& primitive : primitives) {
    fnv.Add(static_cast<uint64_t>(primitive.index()));
    std::visit(Overloaded{
                   [&](const geometry::Triangle& t) {
                     fnv.Add(t.a);
                     fnv.Add(t.b);
                     fnv.Add(t.c);
                   },
                   [&](const geometry::Aabb& b) {
                     fnv.Add(b.min);
                     fnv.Add(b.max);
                   },
                   [&](const geometry::Cylinder& c) {
                     fnv.Add(c.p1);
                     fnv.Add(c.p2);
                     fnv.Add(c.radius);
                   },
                   [&](const geometry::Prism& p) {
                     fnv.Add(p.center);
                     for (const Vec3& a : p.axes) fnv.Add(a);
                     for (double e : p.extents) fnv.Add(e);
                   },
               },
               primitive);
  }
  return fnv.value();
}

}  // namespace simulate
}  // namespace vobench
