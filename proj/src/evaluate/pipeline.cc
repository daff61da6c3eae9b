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


#include "vobench/evaluate/pipeline.h"

#include <map>
#include <stdexcept>

#include "vobench/simulate/actor.h"

namespace vobench {
namespace evaluate {

ReplaySummary ReplayEpisode(
    const std::string& episode_path, const map::BackendConfig& config,
    const std::function<bool(const ReplayStep&)>& visit) {
  simulate::EpisodeReader reader(episode_path);
  const simulate::EpisodeHeader& header = reader.header();
  map::BackendConfig local = config;
  local.spec.origin = header.spec.origin;
  const auto backend = map::MakeBackend(local);

  std::vector<uint16_t> ids;
  for (const auto& sensor : header.sensors) ids.push_back(sensor.id);
  ApproximateTimeSync sync(ids);
  std::map<uint64_t, simulate::ActorSkeleton> poses;

  ReplaySummary summary;
  while (auto record = reader.Next()) {
    if (auto* pose = std::get_if<simulate::SkeletonPose>(&*record)) {
      poses[pose->timestamp_ns] = std::move(pose->skeleton);
      continue;
    }
    auto fused = sync.Push(std::get<simulate::SensorFrame>(std::move(*record)));
    if (!fused) continue;
    ++summary.fused_frames;

    std::vector<geometry::Vec3> actor_points;
    for (const simulate::SensorFrame& member : fused->members) {
      const simulate::SensorModel* sensor =
          header.FindSensor(member.sensor_id);
      backend->Integrate(sensor->position, member.points);
      const auto pose = poses.find(member.timestamp_ns);
      if (pose == poses.end()) {
        throw std::runtime_error("episode frame without actor pose");
      }
      const auto segments = simulate::SegmentPrimitives(pose->second);
      const auto on_actor =
          simulate::GroundTruthPoints(member.points, segments);
      actor_points.insert(actor_points.end(), on_actor.begin(),
                          on_actor.end());
    }
    // Later frames are never older than the fused stamp.
    poses.erase(poses.begin(), poses.lower_bound(fused->timestamp_ns));

    const ReplayStep step{header, *fused, actor_points, *backend};
    if (!visit(step)) break;
  }
  summary.pending_frames = sync.Pending();
  summary.final_occupied = backend->OccupiedVoxels().size();
  return summary;
}

EpisodeEvaluation EvaluateEpisode(const std::string& episode_path,
                                  const map::BackendConfig& config) {
  EpisodeEvaluation out;
  std::map<std::string, uint64_t> skips;
  out.replay = ReplayEpisode(
      episode_path, config, [&](const ReplayStep& step) {
        // Snapshots are stamped at integration completion, so the aligned
        // snapshot of a fused frame is the one taken right here.
        const FrameEvaluation frame =
            EvaluateFrame(step.fused.timestamp_ns,
                          step.backend.OccupiedVoxels(), step.actor_points,
                          step.backend.spec());
        if (frame.skip_reason) {
          ++skips[*frame.skip_reason];
        } else {
          out.frames.push_back(frame.record);
        }
        return true;
      });
  if (!out.frames.empty()) out.report = Aggregate(out.frames);
  out.report.skip_reasons = skips;
  for (const auto& [reason, n] : skips) out.report.frames_skipped += n;
  return out;
}

}  // namespace evaluate
}  // namespace vobench
