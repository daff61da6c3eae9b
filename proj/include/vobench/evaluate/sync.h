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


#ifndef VOBENCH_EVALUATE_SYNC_H_
#define VOBENCH_EVALUATE_SYNC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vobench/simulate/episode.h"

namespace vobench {
namespace evaluate {

struct FusedFrame {
  uint64_t timestamp_ns = 0;
  // One frame per sensor, ordered by sensor id.
  std::vector<simulate::SensorFrame> members;
};

// Buffers frames per sensor. Once every queue holds a frame, the latest
// frame of each queue is fused and all queues are cleared.
class ApproximateTimeSync {
 public:
  explicit ApproximateTimeSync(std::span<const uint16_t> sensor_ids);

  // Throws std::invalid_argument for an unknown sensor or for a frame older
  // than the previous frame of the same sensor.
  std::optional<FusedFrame> Push(simulate::SensorFrame frame);

  // Frames waiting in the queues.
  std::size_t Pending() const;

 private:
  std::map<uint16_t, std::vector<simulate::SensorFrame>> queues_;
  std::map<uint16_t, uint64_t> last_seen_;
};

// Index of the earliest snapshot stamped at or after fused_ts, if any.
// Snapshot stamps must be ascending.
std::optional<std::size_t> AlignMapOutput(
    std::span<const uint64_t> snapshot_ts, uint64_t fused_ts);

}  // namespace evaluate
}  // namespace vobench

#endif  // VOBENCH_EVALUATE_SYNC_H_
