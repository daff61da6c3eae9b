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


#include "vobench/evaluate/sync.h"

#include <algorithm>
#include <stdexcept>

namespace vobench {
namespace evaluate {

ApproximateTimeSync::ApproximateTimeSync(
    std::span<const uint16_t> sensor_ids) {
  if (sensor_ids.empty()) {
    throw std::invalid_argument("sync needs at least one sensor");
  }
  for (uint16_t id : sensor_ids) {
    if (!queues_.emplace(id, std::vector<simulate::SensorFrame>{}).second) {
      throw std::invalid_argument("duplicate sensor id in sync");
    }
  }
}

std::optional<FusedFrame> ApproximateTimeSync::Push(
    simulate::SensorFrame frame) {
  auto it = queues_.find(frame.sensor_id);
  if (it == queues_.end()) {
    throw std::invalid_argument("frame from unknown sensor");
  }
  auto last = last_seen_.find(frame.sensor_id);
  if (last != last_seen_.end() && frame.timestamp_ns < last->second) {
    throw std::invalid_argument("frames out of order for sensor");
  }
  last_seen_[frame.sensor_id] = frame.timestamp_ns;
  it->second.push_back(std::move(frame));

  for (const auto& [id, queue] : queues_) {
    if (queue.empty()) return std::nullopt;
  }
  FusedFrame fused;
  for (auto& [id, queue] : queues_) {
    fused.timestamp_ns =
        std::max(fused.timestamp_ns, queue.back().timestamp_ns);
    fused.members.push_back(std::move(queue.back()));
    queue.clear();
  }
  return fused;
}

std::size_t ApproximateTimeSync::Pending() const {
  std::size_t n = 0;
  for (const auto& [id, queue] : queues_) n += queue.size();
  return n;
}

std::optional<std::size_t> AlignMapOutput(
    std::span<const uint64_t> snapshot_ts, uint64_t fused_ts) {
  const auto it =
      std::lower_bound(snapshot_ts.begin(), snapshot_ts.end(), fused_ts);
  if (it == snapshot_ts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - snapshot_ts.begin());
}

}  // namespace evaluate
}  // namespace vobench
