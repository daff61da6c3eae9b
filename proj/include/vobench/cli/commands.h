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


#ifndef VOBENCH_CLI_COMMANDS_H_
#define VOBENCH_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vobench/cli/config.h"
#include "vobench/evaluate/pipeline.h"

namespace vobench {
namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

std::string MetricsCsvHeader();
std::string MetricsCsvRow(const RunConfig& config,
                          const evaluate::MetricsReport& report);
// Row for a configuration whose evaluation failed: metric cells are empty.
std::string FailedCsvRow(const RunConfig& config);
std::string FramesCsv(std::span<const evaluate::FrameRecord> frames);

struct SweepRow {
  RunConfig config;
  std::optional<evaluate::MetricsReport> report;
  std::string error;
};

// One configuration per value, in value order. Values are validated before
// anything runs (UsageError); evaluation failures are kept per row.
std::vector<SweepRow> RunSweep(const RunConfig& base, const std::string& param,
                               const std::vector<std::string>& values,
                               int jobs);

struct ExportSummary {
  // Stamp of the last fused frame at or before the requested time.
  std::optional<uint64_t> snapshot_ns;
  std::size_t occupied = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// Writes <prefix>.xyz (occupied voxel centers) and <prefix>_classified.xyzrgb
// (TP green, FP blue, FN red) for the map state at time_s.
ExportSummary ExportSnapshot(const RunConfig& config, double time_s,
                             const std::string& prefix);

// Entry point shared by the binary and the tests.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace cli
}  // namespace vobench

#endif  // VOBENCH_CLI_COMMANDS_H_
