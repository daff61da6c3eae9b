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


#ifndef VOBENCH_EVALUATE_PIPELINE_H_
#define VOBENCH_EVALUATE_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vobench/evaluate/classify.h"
#include "vobench/evaluate/metrics.h"
#include "vobench/evaluate/sync.h"
#include "vobench/map/backend_factory.h"
#include "vobench/simulate/episode.h"

namespace vobench {
namespace evaluate {

struct ReplayStep {
  const simulate::EpisodeHeader& header;
  const FusedFrame& fused;
  // Fused points lying on the actor, each member tested against the pose
  // recorded at that member's timestamp.
  std::span<const geometry::Vec3> actor_points;
  // Map state right after integrating the fused frame.
  const map::OccupancyBackend& backend;
};

struct ReplaySummary {
  uint64_t fused_frames = 0;
  // Frames still queued when the episode ended.
  std::size_t pending_frames = 0;
  // Occupied voxels of the map when the replay finished.
  std::size_t final_occupied = 0;
};

// Streams an episode through the synchronizer and a fresh backend. The grid
// origin is taken from the episode; everything else from config. The visitor
// returns false to stop early.
ReplaySummary ReplayEpisode(
    const std::string& episode_path, const map::BackendConfig& config,
    const std::function<bool(const ReplayStep&)>& visit);

struct EpisodeEvaluation {
  MetricsReport report;
  std::vector<FrameRecord> frames;
  ReplaySummary replay;
};

EpisodeEvaluation EvaluateEpisode(const std::string& episode_path,
                                  const map::BackendConfig& config);

}  // namespace evaluate
}  // namespace vobench

#endif  // VOBENCH_EVALUATE_PIPELINE_H_
