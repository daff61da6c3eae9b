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


#ifndef VOBENCH_SIMULATE_SCENE_H_
#define VOBENCH_SIMULATE_SCENE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "vobench/geometry/primitives.h"

namespace vobench {
namespace simulate {

using geometry::Vec3;

// The cell spans [0, kCellLength] x [0, kCellWidth] x [0, kCellHeight].
inline constexpr double kCellLength = 4.0;
inline constexpr double kCellWidth = 2.8;
inline constexpr double kCellHeight = 2.29;

inline Vec3 CellCenter() { return Vec3(kCellLength / 2., kCellWidth / 2., 0.); }
geometry::Aabb CellBounds();

struct Scene {
  std::vector<geometry::Primitive> primitives;
};

// Floor, central plate and gantry.
Scene MakeDefaultScene();

// FNV-1a over the primitive parameters. Stable across runs and platforms
// with IEEE doubles.
uint64_t SceneHash(std::span<const geometry::Primitive> primitives);

}  // namespace simulate
}  // namespace vobench

#endif  // VOBENCH_SIMULATE_SCENE_H_
