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


#include "vobench/simulate/episode.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <set>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "vobench/simulate/scene.h"

namespace vobench {
namespace simulate {
namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'V', 'O', 'E', 'P'};
constexpr uint8_t kFrameRecord = 0;
constexpr uint8_t kSkeletonRecord = 1;

void PutU8(std::vector<uint8_t>* out, uint8_t v) { out->push_back(v); }

template <class T>
void PutLittleEndian(std::vector<uint8_t>* out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out->push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
}

void PutF32(std::vector<uint8_t>* out, double v) {
  PutLittleEndian(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
}

class ByteReader {
 public:
  ByteReader(const uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  template <class T>
  T Get() {
    Need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<T>(data_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return v;
  }

  double GetF32() { return std::bit_cast<float>(Get<uint32_t>()); }

  std::string GetString(std::size_t n) {
    Need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == size_; }

 private:
  void Need(std::size_t n) const {
    if (pos_ + n > size_) throw std::runtime_error("episode record truncated");
  }

  const uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

json Vec3ToJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 Vec3FromJson(const json& j) {
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(),
              j.at(2).get<double>());
}

json SensorToJson(const SensorModel& s) {
  json j;
  j["id"] = s.id;
  j["name"] = s.name;
  j["kind"] = std::string(SensorKindName(s.kind));
  j["position"] = Vec3ToJson(s.position);
  j["orientation_wxyz"] = json::array(
      {s.orientation.w(), s.orientation.x(), s.orientation.y(),
       s.orientation.z()});
  j["rate_hz"] = s.rate_hz;
  j["phase_s"] = s.phase_s;
  j["noise_sigma"] = s.noise_sigma;
  j["max_range"] = s.max_range;
  if (s.kind == SensorKind::kLidar) {
    j["rings"] = s.rings;
    j["azimuth_steps"] = s.azimuth_steps;
    j["vertical_fov_deg"] = s.vertical_fov_deg;
    j["azimuth_fov_deg"] = s.azimuth_fov_deg;
  } else {
    j["width"] = s.width;
    j["height"] = s.height;
    j["horizontal_fov_deg"] = s.horizontal_fov_deg;
    j["vertical_fov_deg"] = s.vertical_fov_deg_camera;
    j["pool_factor"] = s.pool_factor;
  }
  return j;
}

SensorModel SensorFromJson(const json& j) {
  SensorModel s;
  s.id = j.at("id").get<uint16_t>();
  s.name = j.at("name").get<std::string>();
  s.kind = ParseSensorKind(j.at("kind").get<std::string>());
  s.position = Vec3FromJson(j.at("position"));
  const json& q = j.at("orientation_wxyz");
  s.orientation = Eigen::Quaterniond(q.at(0).get<double>(), q.at(1).get<double>(),
                                     q.at(2).get<double>(), q.at(3).get<double>());
  s.rate_hz = j.at("rate_hz").get<double>();
  s.phase_s = j.at("phase_s").get<double>();
  s.noise_sigma = j.at("noise_sigma").get<double>();
  s.max_range = j.at("max_range").get<double>();
  if (s.kind == SensorKind::kLidar) {
    s.rings = j.at("rings").get<int>();
    s.azimuth_steps = j.at("azimuth_steps").get<int>();
    s.vertical_fov_deg = j.at("vertical_fov_deg").get<double>();
    s.azimuth_fov_deg = j.at("azimuth_fov_deg").get<double>();
  } else {
    s.width = j.at("width").get<int>();
    s.height = j.at("height").get<int>();
    s.horizontal_fov_deg = j.at("horizontal_fov_deg").get<double>();
    s.vertical_fov_deg_camera = j.at("vertical_fov_deg").get<double>();
    s.pool_factor = j.at("pool_factor").get<int>();
  }
  return s;
}

}  // namespace

const SensorModel* EpisodeHeader::FindSensor(uint16_t id) const {
  for (const SensorModel& s : sensors) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

void ValidateScenario(const ScenarioConfig& config) {
  if (!(config.duration_s >= 0.) || !std::isfinite(config.duration_s)) {
    throw std::invalid_argument("duration must be a finite value >= 0");
  }
  grid::MakeGridSpec(config.spec.origin, config.spec.resolution);
  std::set<uint16_t> ids;
  for (const SensorModel& s : config.sensors) {
    ValidateSensor(s);
    if (!ids.insert(s.id).second) {
      throw std::invalid_argument("duplicate sensor id");
    }
  }
}

std::string HeaderToJson(const EpisodeHeader& header) {
  json j;
  j["grid"] = {{"origin", Vec3ToJson(header.spec.origin)},
               {"resolution", header.spec.resolution}};
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(header.scene_hash));
  j["scene_hash"] = hash;
  j["seed"] = header.seed;
  j["duration_s"] = header.duration_s;
  j["sensors"] = json::array();
  for (const SensorModel& s : header.sensors) {
    j["sensors"].push_back(SensorToJson(s));
  }
  return j.dump();
}

EpisodeHeader HeaderFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    EpisodeHeader header;
    header.spec.origin = Vec3FromJson(j.at("grid").at("origin"));
    header.spec.resolution = j.at("grid").at("resolution").get<double>();
    header.scene_hash =
        std::stoull(j.at("scene_hash").get<std::string>(), nullptr, 16);
    header.seed = j.at("seed").get<uint64_t>();
    header.duration_s = j.at("duration_s").get<double>();
    for (const json& s : j.at("sensors")) {
      header.sensors.push_back(SensorFromJson(s));
    }
    return header;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad episode header: ") + e.what());
  }
}

EpisodeWriter::EpisodeWriter(std::ostream* out, const EpisodeHeader& header)
    : out_(out) {
  std::vector<uint8_t> prefix(kMagic, kMagic + 4);
  PutLittleEndian(&prefix, kEpisodeFormatVersion);
  out_->write(reinterpret_cast<const char*>(prefix.data()),
              static_cast<std::streamsize>(prefix.size()));
  *out_ << HeaderToJson(header) << '\n';
  if (!*out_) throw std::runtime_error("failed to write episode header");
}

void EpisodeWriter::Record(uint8_t type, uint64_t timestamp,
                           const std::vector<uint8_t>& payload) {
  std::vector<uint8_t> head;
  PutU8(&head, type);
  PutLittleEndian(&head, timestamp);
  PutLittleEndian(&head, static_cast<uint32_t>(payload.size()));
  out_->write(reinterpret_cast<const char*>(head.data()),
              static_cast<std::streamsize>(head.size()));
  out_->write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
  if (!*out_) throw std::runtime_error("failed to write episode record");
}

void EpisodeWriter::Write(const SensorFrame& frame) {
  std::vector<uint8_t> payload;
  payload.reserve(6 + 12 * frame.points.size());
  PutLittleEndian(&payload, frame.sensor_id);
  PutLittleEndian(&payload, static_cast<uint32_t>(frame.points.size()));
  for (const Vec3& p : frame.points) {
    PutF32(&payload, p.x());
    PutF32(&payload, p.y());
    PutF32(&payload, p.z());
  }
  Record(kFrameRecord, frame.timestamp_ns, payload);
}

void EpisodeWriter::Write(const SkeletonPose& pose) {
  std::vector<uint8_t> payload;
  PutLittleEndian(&payload,
                  static_cast<uint16_t>(pose.skeleton.joints.size()));
  for (const Joint& joint : pose.skeleton.joints) {
    if (joint.name.size() > 255) {
      throw std::invalid_argument("joint name too long");
    }
    PutU8(&payload, static_cast<uint8_t>(joint.name.size()));
    payload.insert(payload.end(), joint.name.begin(), joint.name.end());
    PutF32(&payload, joint.position.x());
    PutF32(&payload, joint.position.y());
    PutF32(&payload, joint.position.z());
  }
  Record(kSkeletonRecord, pose.timestamp_ns, payload);
}

EpisodeReader::EpisodeReader(const std::string& path)
    : in_(path, std::ios::binary) {
  if (!in_) throw std::runtime_error("cannot open episode: " + path);
  char prefix[8];
  if (!in_.read(prefix, 8) || std::memcmp(prefix, kMagic, 4) != 0) {
    throw std::runtime_error("not an episode file: " + path);
  }
  ByteReader version(reinterpret_cast<const uint8_t*>(prefix + 4), 4);
  if (version.Get<uint32_t>() != kEpisodeFormatVersion) {
    throw std::runtime_error("unsupported episode version");
  }
  std::string line;
  if (!std::getline(in_, line)) {
    throw std::runtime_error("missing episode header");
  }
  header_ = HeaderFromJson(line);
}

std::optional<EpisodeRecord> EpisodeReader::Next() {
  char head[13];
  in_.read(head, 1);
  if (in_.gcount() == 0) return std::nullopt;
  if (!in_.read(head + 1, 12)) {
    throw std::runtime_error("episode record header truncated");
  }
  ByteReader fields(reinterpret_cast<const uint8_t*>(head), 13);
  const auto type = fields.Get<uint8_t>();
  const auto timestamp = fields.Get<uint64_t>();
  const auto length = fields.Get<uint32_t>();
  buffer_.resize(length);
  if (length > 0 &&
      !in_.read(reinterpret_cast<char*>(buffer_.data()), length)) {
    throw std::runtime_error("episode record payload truncated");
  }
  ByteReader payload(buffer_.data(), buffer_.size());
  if (type == kFrameRecord) {
    SensorFrame frame;
    frame.timestamp_ns = timestamp;
    frame.sensor_id = payload.Get<uint16_t>();
    const auto count = payload.Get<uint32_t>();
    frame.points.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
      const double x = payload.GetF32();
      const double y = payload.GetF32();
      const double z = payload.GetF32();
      frame.points.emplace_back(x, y, z);
    }
    if (!payload.done()) throw std::runtime_error("frame payload overrun");
    return frame;
  }
  if (type == kSkeletonRecord) {
    SkeletonPose pose;
    pose.timestamp_ns = timestamp;
    const auto count = payload.Get<uint16_t>();
    for (uint16_t i = 0; i < count; ++i) {
      const auto n = payload.Get<uint8_t>();
      Joint joint;
      joint.name = payload.GetString(n);
      const double x = payload.GetF32();
      const double y = payload.GetF32();
      const double z = payload.GetF32();
      joint.position = Vec3(x, y, z);
      pose.skeleton.joints.push_back(std::move(joint));
    }
    if (!payload.done()) throw std::runtime_error("skeleton payload overrun");
    return pose;
  }
  throw std::runtime_error("unknown episode record type");
}

void RecordEpisode(const ScenarioConfig& config, std::ostream* out) {
  ValidateScenario(config);
  const Scene scene = MakeDefaultScene();
  EpisodeHeader header;
  header.spec = config.spec;
  header.scene_hash = SceneHash(scene.primitives);
  header.seed = config.seed;
  header.duration_s = config.duration_s;
  header.sensors = config.sensors;
  EpisodeWriter writer(out, header);

  struct Capture {
    uint64_t timestamp;
    uint16_t sensor_id;
    std::size_t sensor_index;
    uint64_t frame_index;
  };
  std::vector<Capture> captures;
  for (std::size_t s = 0; s < config.sensors.size(); ++s) {
    const auto stamps = FrameTimestamps(config.sensors[s], config.duration_s);
    for (std::size_t k = 0; k < stamps.size(); ++k) {
      captures.push_back({stamps[k], config.sensors[s].id, s, k});
    }
  }
  std::sort(captures.begin(), captures.end(),
            [](const Capture& a, const Capture& b) {
              return std::tie(a.timestamp, a.sensor_id) <
                     std::tie(b.timestamp, b.sensor_id);
            });

  const geometry::RayScene static_scene(scene.primitives);
  for (std::size_t i = 0; i < captures.size();) {
    const uint64_t timestamp = captures[i].timestamp;
    SkeletonPose pose{timestamp,
                      ActorPoseAt(timestamp * 1e-9, config.duration_s)};
    writer.Write(pose);
    geometry::RayScene world = static_scene;
    for (const auto& segment : SegmentPrimitives(pose.skeleton)) {
      world.Add(segment);
    }
    for (; i < captures.size() && captures[i].timestamp == timestamp; ++i) {
      const SensorModel& sensor = config.sensors[captures[i].sensor_index];
      std::mt19937_64 rng =
          FrameGenerator(config.seed, sensor.id, captures[i].frame_index);
      const OrganizedCloud cloud = RenderSensor(sensor, world, &rng);
      SensorFrame frame;
      frame.sensor_id = sensor.id;
      frame.timestamp_ns = timestamp;
      if (sensor.kind == SensorKind::kDepthCamera) {
        // The file stores unorganized clouds, so pooling happens here.
        frame.points = MeanPoolDownsample(cloud, sensor.pool_factor);
      } else {
        for (const auto& p : cloud.points) {
          if (p) frame.points.push_back(*p);
        }
      }
      writer.Write(frame);
    }
  }
  out->flush();
  if (!*out) throw std::runtime_error("failed to flush episode");
}

void RecordEpisode(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create episode: " + path);
  RecordEpisode(config, &out);
}

}  // namespace simulate
}  // namespace vobench
