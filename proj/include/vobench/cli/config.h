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


#ifndef VOBENCH_CLI_CONFIG_H_
#define VOBENCH_CLI_CONFIG_H_

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vobench/map/backend_factory.h"
#include "vobench/simulate/episode.h"

namespace vobench {
namespace cli {

// Bad flags, keys or values. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinVoxelLength = 0.01;
inline constexpr double kMaxVoxelLength = 1.0;

struct ParamInfo {
  std::string_view key;    // dotted config key
  std::string_view alias;  // short name used in CSV params, may be empty
  std::string_view owner;  // backend name, empty when shared
  bool reported;           // always listed in the CSV params cell
};

// Every tunable backend parameter, in CSV order.
const std::vector<ParamInfo>& ParamTable();

// Resolves a dotted key or short alias. Throws UsageError when unknown.
const ParamInfo& FindParam(std::string_view name);

struct RunConfig {
  std::string episode;
  map::BackendConfig backend;
  // Keys given explicitly through a file or --set.
  std::set<std::string> explicit_keys;
};

// Parses and stores one parameter. Throws UsageError.
void ApplySetting(RunConfig* config, std::string_view name,
                  std::string_view value);

// Splits "key=value". Throws UsageError.
std::pair<std::string, std::string> SplitAssignment(std::string_view text);

// Reads an INI file with sections run, scenario, grid, octree, skiplist and
// tsdf. Either output may be null. Throws UsageError.
void LoadConfigFile(const std::string& path, RunConfig* run,
                    simulate::ScenarioConfig* scenario);

void ApplyScenarioSetting(simulate::ScenarioConfig* scenario,
                          std::string_view key, std::string_view value);

// Rejects unknown backends, parameters owned by another backend, out-of-range
// voxel lengths and invalid backend options. Throws UsageError.
void ValidateRunConfig(const RunConfig& config);

// Current value of a parameter in canonical text form.
std::string ParamValue(const RunConfig& config, const ParamInfo& param);

// "length=0.1;hit=1;miss=0.4" style cell.
std::string ParamsCell(const RunConfig& config);

// Shortest round-trip decimal form.
std::string FormatNumber(double value);

}  // namespace cli
}  // namespace vobench

#endif  // VOBENCH_CLI_CONFIG_H_
