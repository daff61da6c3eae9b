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


#include "vobench/cli/config.h"

#include <charconv>
#include <cmath>

#include "boost/property_tree/ini_parser.hpp"
#include "boost/property_tree/ptree.hpp"

namespace vobench {
namespace cli {
namespace {

double ParseDouble(std::string_view key, std::string_view text) {
  double value = 0.;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw UsageError("bad number for " + std::string(key) + ": " +
                     std::string(text));
  }
  return value;
}

int64_t ParseInt(std::string_view key, std::string_view text) {
  int64_t value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError("bad integer for " + std::string(key) + ": " +
                     std::string(text));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("bad boolean for " + std::string(key) + ": " +
                   std::string(text));
}

std::string FormatBool(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<ParamInfo>& ParamTable() {
  static const std::vector<ParamInfo> table = {
      {"grid.voxel_length", "length", "", true},
      {"octree.hit_probability", "hit", "octree", true},
      {"octree.miss_probability", "miss", "octree", true},
      {"octree.occupancy_threshold", "", "octree", false},
      {"octree.clamp_min_log_odds", "", "octree", false},
      {"octree.clamp_max_log_odds", "", "octree", false},
      {"octree.prune_on_update", "", "octree", false},
      {"skiplist.min_voxel_weight", "min_weight", "skiplist", true},
      {"skiplist.decrement", "", "skiplist", false},
      {"tsdf.truncation_distance", "truncation", "tsdf", true},
      {"tsdf.constant_weight", "constant_weight", "tsdf", true},
      {"tsdf.max_weight", "", "tsdf", false},
      {"tsdf.occupied_distance_factor", "", "tsdf", false},
      {"tsdf.voxel_carving", "", "tsdf", false},
  };
  return table;
}

const ParamInfo& FindParam(std::string_view name) {
  for (const ParamInfo& p : ParamTable()) {
    if (p.key == name || (!p.alias.empty() && p.alias == name)) return p;
  }
  throw UsageError("unknown parameter: " + std::string(name));
}

std::pair<std::string, std::string> SplitAssignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw UsageError("expected key=value, got: " + std::string(text));
  }
  return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

void ApplySetting(RunConfig* config, std::string_view name,
                  std::string_view value) {
  if (name == "run.episode") {
    config->episode = std::string(value);
    return;
  }
  if (name == "run.backend") {
    config->backend.backend = std::string(value);
    return;
  }
  const ParamInfo& p = FindParam(name);
  const std::string_view key = p.key;
  map::BackendConfig& b = config->backend;
  if (key == "grid.voxel_length") {
    b.spec.resolution = ParseDouble(key, value);
  } else if (key == "octree.hit_probability") {
    b.octree.hit_prob = ParseDouble(key, value);
  } else if (key == "octree.miss_probability") {
    b.octree.miss_prob = ParseDouble(key, value);
  } else if (key == "octree.occupancy_threshold") {
    b.octree.occupancy_threshold_prob = ParseDouble(key, value);
  } else if (key == "octree.clamp_min_log_odds") {
    b.octree.clamp_min = ParseDouble(key, value);
  } else if (key == "octree.clamp_max_log_odds") {
    b.octree.clamp_max = ParseDouble(key, value);
  } else if (key == "octree.prune_on_update") {
    b.octree.prune_on_update = ParseBool(key, value);
  } else if (key == "skiplist.min_voxel_weight") {
    const int64_t w = ParseInt(key, value);
    if (w < 0 || w > 1000000) throw UsageError("min_voxel_weight out of range");
    b.skimap.min_voxel_weight = static_cast<int>(w);
  } else if (key == "skiplist.decrement") {
    try {
      b.skimap.decrement = map::ParseDecrementMode(value);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (key == "tsdf.truncation_distance") {
    b.tsdf.truncation_distance = ParseDouble(key, value);
  } else if (key == "tsdf.constant_weight") {
    b.tsdf.constant_weight = ParseBool(key, value);
  } else if (key == "tsdf.max_weight") {
    b.tsdf.max_weight = ParseDouble(key, value);
  } else if (key == "tsdf.occupied_distance_factor") {
    b.tsdf.occupied_distance_factor = ParseDouble(key, value);
  } else if (key == "tsdf.voxel_carving") {
    b.tsdf.voxel_carving = ParseBool(key, value);
  }
  config->explicit_keys.insert(std::string(key));
}

void ApplyScenarioSetting(simulate::ScenarioConfig* scenario,
                          std::string_view key, std::string_view value) {
  if (key == "scenario.duration") {
    scenario->duration_s = ParseDouble(key, value);
  } else if (key == "scenario.seed") {
    const int64_t seed = ParseInt(key, value);
    if (seed < 0) throw UsageError("seed must be non-negative");
    scenario->seed = static_cast<uint64_t>(seed);
  } else if (key == "scenario.noise_sigma") {
    const double sigma = ParseDouble(key, value);
    for (auto& s : scenario->sensors) s.noise_sigma = sigma;
  } else if (key == "grid.voxel_length") {
    scenario->spec.resolution = ParseDouble(key, value);
  } else {
    throw UsageError("unknown scenario key: " + std::string(key));
  }
}

void LoadConfigFile(const std::string& path, RunConfig* run,
                    simulate::ScenarioConfig* scenario) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError("cannot read config: " + std::string(e.what()));
  }
  for (const auto& [section, entries] : tree) {
    if (entries.empty()) {
      throw UsageError("config entry outside a section: " + section);
    }
    for (const auto& [name, node] : entries) {
      const std::string key = section + "." + name;
      const std::string value = node.get_value<std::string>();
      if (section == "scenario") {
        if (scenario) ApplyScenarioSetting(scenario, key, value);
      } else if (section == "run" &&
                 (name == "episode" || name == "backend")) {
        if (run) ApplySetting(run, key, value);
      } else if (section == "grid" || section == "octree" ||
                 section == "skiplist" || section == "tsdf") {
        FindParam(key);
        if (run) ApplySetting(run, key, value);
        if (scenario && key == "grid.voxel_length") {
          ApplyScenarioSetting(scenario, key, value);
        }
      } else {
        throw UsageError("unknown config key: " + key);
      }
    }
  }
}

void ValidateRunConfig(const RunConfig& config) {
  const std::string& backend = config.backend.backend;
  if (!map::IsBackendName(backend)) {
    throw UsageError("unknown backend: " + backend);
  }
  for (const std::string& key : config.explicit_keys) {
    const ParamInfo& p = FindParam(key);
    if (!p.owner.empty() && p.owner != backend) {
      throw UsageError("parameter " + key + " does not apply to backend " +
                       backend);
    }
  }
  const double length = config.backend.spec.resolution;
  if (!(length >= kMinVoxelLength && length <= kMaxVoxelLength)) {
    throw UsageError("voxel length must lie in [0.01, 1.0] m");
  }
  try {
    if (backend == "octree") map::ValidateOctreeOptions(config.backend.octree);
    if (backend == "skiplist") {
      map::ValidateSkiMapOptions(config.backend.skimap);
    }
    if (backend == "tsdf") map::ValidateTsdfOptions(config.backend.tsdf);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string FormatNumber(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string ParamValue(const RunConfig& config, const ParamInfo& param) {
  const map::BackendConfig& b = config.backend;
  const std::string_view key = param.key;
  if (key == "grid.voxel_length") return FormatNumber(b.spec.resolution);
  if (key == "octree.hit_probability") return FormatNumber(b.octree.hit_prob);
  if (key == "octree.miss_probability") return FormatNumber(b.octree.miss_prob);
  if (key == "octree.occupancy_threshold") {
    return FormatNumber(b.octree.occupancy_threshold_prob);
  }
  if (key == "octree.clamp_min_log_odds") return FormatNumber(b.octree.clamp_min);
  if (key == "octree.clamp_max_log_odds") return FormatNumber(b.octree.clamp_max);
  if (key == "octree.prune_on_update") {
    return FormatBool(b.octree.prune_on_update);
  }
  if (key == "skiplist.min_voxel_weight") {
    return std::to_string(b.skimap.min_voxel_weight);
  }
  if (key == "skiplist.decrement") {
    return std::string(map::DecrementModeName(b.skimap.decrement));
  }
  if (key == "tsdf.truncation_distance") {
    return FormatNumber(b.tsdf.truncation_distance);
  }
  if (key == "tsdf.constant_weight") return FormatBool(b.tsdf.constant_weight);
  if (key == "tsdf.max_weight") return FormatNumber(b.tsdf.max_weight);
  if (key == "tsdf.occupied_distance_factor") {
    return FormatNumber(b.tsdf.occupied_distance_factor);
  }
  if (key == "tsdf.voxel_carving") return FormatBool(b.tsdf.voxel_carving);
  throw std::logic_error("unhandled parameter");
}

std::string ParamsCell(const RunConfig& config) {
  std::string cell;
  for (const ParamInfo& p : ParamTable()) {
    if (!p.owner.empty() && p.owner != config.backend.backend) continue;
    if (!p.reported && !config.explicit_keys.count(std::string(p.key))) {
      continue;
    }
    if (!cell.empty()) cell += ';';
    cell += p.alias.empty() ? std::string(p.key) : std::string(p.alias);
    cell += '=';
    cell += ParamValue(config, p);
  }
  return cell;
}

}  // namespace cli
}  // namespace vobench
