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


#ifndef VOBENCH_SIMULATE_EPISODE_H_
#define VOBENCH_SIMULATE_EPISODE_H_

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "vobench/grid/grid.h"
#include "vobench/simulate/actor.h"
#include "vobench/simulate/sensor.h"

namespace vobench {
namespace simulate {

inline constexpr uint32_t kEpisodeFormatVersion = 1;

struct SensorFrame {
  uint16_t sensor_id = 0;
  uint64_t timestamp_ns = 0;
  std::vector<Vec3> points;
};

struct SkeletonPose {
  uint64_t timestamp_ns = 0;
  ActorSkeleton skeleton;
};

using EpisodeRecord = std::variant<SensorFrame, SkeletonPose>;

struct EpisodeHeader {
  grid::GridSpec spec;
  uint64_t scene_hash = 0;
  uint64_t seed = 0;
  double duration_s = 0.;
  std::vector<SensorModel> sensors;

  const SensorModel* FindSensor(uint16_t id) const;
};

struct ScenarioConfig {
  double duration_s = 96.;
  uint64_t seed = 0;
  grid::GridSpec spec;
  std::vector<SensorModel> sensors = DefaultSensors();
};

// Throws std::invalid_argument on negative duration, invalid sensors or
// duplicate sensor ids.
void ValidateScenario(const ScenarioConfig& config);

// Little-endian record stream: "VOEP", u32 version, JSON header line, then
// (type u8, timestamp u64, length u32, payload) records.
class EpisodeWriter {
 public:
  EpisodeWriter(std::ostream* out, const EpisodeHeader& header);

  void Write(const SensorFrame& frame);
  void Write(const SkeletonPose& pose);

 private:
  void Record(uint8_t type, uint64_t timestamp,
              const std::vector<uint8_t>& payload);

  std::ostream* out_;
};

class EpisodeReader {
 public:
  // Throws std::runtime_error if the file cannot be opened or is not an
  // episode.
  explicit EpisodeReader(const std::string& path);

  const EpisodeHeader& header() const { return header_; }

  // Next record in file order, or nullopt at end of file. Throws
  // std::runtime_error on truncated or malformed records.
  std::optional<EpisodeRecord> Next();

 private:
  std::ifstream in_;
  EpisodeHeader header_;
  std::vector<uint8_t> buffer_;
};

// Renders the scenario and writes it to `path`. Each distinct capture time
// gets a skeleton record followed by the frames captured at that time, in
// sensor id order. Throws std::runtime_error on I/O failure.
void RecordEpisode(const ScenarioConfig& config, const std::string& path);

// Same, into a stream.
void RecordEpisode(const ScenarioConfig& config, std::ostream* out);

// Header JSON, as written in the file.
std::string HeaderToJson(const EpisodeHeader& header);
EpisodeHeader HeaderFromJson(const std::string& json);

}  // namespace simulate
}  // namespace vobench

#endif  // VOBENCH_SIMULATE_EPISODE_H_
