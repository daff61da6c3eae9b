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


#include "vobench/cli/commands.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "vobench/grid/grid.h"

namespace vobench {
namespace cli {
namespace {

std::string Fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

std::string Fixed3(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", v);
  return buffer;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

void EnsureEpisode(const RunConfig& config) {
  if (config.episode.empty()) throw UsageError("an episode is required");
  if (!std::ifstream(config.episode)) {
    throw std::runtime_error("cannot open episode: " + config.episode);
  }
}

std::vector<std::string> SplitValues(const std::string& text) {
  std::vector<std::string> values;
  std::stringstream in(text);
  std::string v;
  while (std::getline(in, v, ',')) {
    if (v.empty()) throw UsageError("empty value in list");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("no values given");
  return values;
}

void PrintSummary(std::ostream& os, const RunConfig& config,
                  const evaluate::MetricsReport& r) {
  os << config.backend.backend << " [" << ParamsCell(config) << "]\n"
     << "  frames evaluated " << r.frames_evaluated << ", skipped "
     << r.frames_skipped << "\n"
     << "  TP " << r.sum_tp << "  FP " << r.sum_fp << "  FN " << r.sum_fn
     << "\n"
     << "  pooled   P " << Fixed(r.precision) << "  R " << Fixed(r.recall)
     << "  F1 " << Fixed(r.f1) << "  F2 " << Fixed(r.f2) << "  F3 "
     << Fixed(r.f3) << "\n"
     << "  per-frame mean   P " << Fixed(r.mean_precision) << "  R "
     << Fixed(r.mean_recall) << "\n";
  for (const auto& [reason, n] : r.skip_reasons) {
    os << "  skipped (" << reason << "): " << n << "\n";
  }
}

// Options shared by run, sweep and export.
struct RunFlags {
  std::string config_path;
  std::string episode;
  std::string backend;
  std::vector<std::string> sets;
};

void AddRunFlags(CLI::App* app, RunFlags* flags) {
  app->add_option("--config", flags->config_path, "INI configuration file");
  app->add_option("--episode", flags->episode, "Recorded episode");
  app->add_option("--backend", flags->backend, "octree, skiplist or tsdf");
  app->add_option("--set", flags->sets, "Override key=value (repeatable)");
}

RunConfig BuildRunConfig(const RunFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    LoadConfigFile(flags.config_path, &config, nullptr);
  }
  if (!flags.episode.empty()) config.episode = flags.episode;
  if (!flags.backend.empty()) config.backend.backend = flags.backend;
  for (const std::string& s : flags.sets) {
    const auto [key, value] = SplitAssignment(s);
    ApplySetting(&config, key, value);
  }
  ValidateRunConfig(config);
  return config;
}

}  // namespace

std::string MetricsCsvHeader() {
  return "backend,params,frames_evaluated,frames_skipped,sum_tp,sum_fp,"
         "sum_fn,precision,recall,f1,f2,f3,mean_precision,mean_recall\n";
}

std::string MetricsCsvRow(const RunConfig& config,
                          const evaluate::MetricsReport& r) {
  std::ostringstream os;
  os << config.backend.backend << ',' << ParamsCell(config) << ','
     << r.frames_evaluated << ',' << r.frames_skipped << ',' << r.sum_tp << ','
     << r.sum_fp << ',' << r.sum_fn << ',' << Fixed(r.precision) << ','
     << Fixed(r.recall) << ',' << Fixed(r.f1) << ',' << Fixed(r.f2) << ','
     << Fixed(r.f3) << ',' << Fixed(r.mean_precision) << ','
     << Fixed(r.mean_recall) << '\n';
  return os.str();
}

std::string FailedCsvRow(const RunConfig& config) {
  return config.backend.backend + ',' + ParamsCell(config) +
         ",,,,,,,,,,,,\n";
}

std::string FramesCsv(std::span<const evaluate::FrameRecord> frames) {
  std::ostringstream os;
  os << "timestamp_ns,tp,fp,fn,precision,recall,f1,f2,f3\n";
  for (const auto& f : frames) {
    os << f.timestamp_ns << ',' << f.tp << ',' << f.fp << ',' << f.fn << ','
       << Fixed(f.precision) << ',' << Fixed(f.recall) << ',' << Fixed(f.f1)
       << ',' << Fixed(f.f2) << ',' << Fixed(f.f3) << '\n';
  }
  return os.str();
}

std::vector<SweepRow> RunSweep(const RunConfig& base, const std::string& param,
                               const std::vector<std::string>& values,
                               int jobs) {
  if (jobs < 1) throw UsageError("jobs must be at least 1");
  const ParamInfo& info = FindParam(param);
  std::vector<SweepRow> rows;
  std::set<std::string> seen;
  for (const std::string& v : values) {
    SweepRow row;
    row.config = base;
    ApplySetting(&row.config, info.key, v);
    ValidateRunConfig(row.config);
    if (!seen.insert(ParamValue(row.config, info)).second) {
      throw UsageError("duplicate sweep value: " + v);
    }
    rows.push_back(std::move(row));
  }
  EnsureEpisode(base);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rows[i].report = evaluate::EvaluateEpisode(rows[i].config.episode,
                                                   rows[i].config.backend)
                             .report;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const int n = std::min<int>(jobs, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

ExportSummary ExportSnapshot(const RunConfig& config, double time_s,
                             const std::string& prefix) {
  EnsureEpisode(config);
  double duration = 0.;
  {
    simulate::EpisodeReader reader(config.episode);
    duration = reader.header().duration_s;
  }
  if (!(time_s >= 0. && time_s <= duration)) {
    throw UsageError("export time outside the episode");
  }
  const auto limit = static_cast<uint64_t>(std::llround(time_s * 1e9));

  ExportSummary summary;
  grid::VoxelSet occupied;
  evaluate::ClassifiedVoxels classes;
  grid::GridSpec spec;
  evaluate::ReplayEpisode(
      config.episode, config.backend, [&](const evaluate::ReplayStep& step) {
        if (step.fused.timestamp_ns > limit) return false;
        summary.snapshot_ns = step.fused.timestamp_ns;
        spec = step.backend.spec();
        occupied = step.backend.OccupiedVoxels();
        auto frame = evaluate::EvaluateFrame(
            step.fused.timestamp_ns, occupied, step.actor_points, spec);
        classes = std::move(frame.classes);
        return true;
      });

  std::ostringstream xyz;
  xyz << std::fixed << std::setprecision(4);
  for (const auto& key : grid::SortedKeys(occupied)) {
    const auto c = grid::VoxelCenter(key, spec);
    xyz << c.x() << ' ' << c.y() << ' ' << c.z() << '\n';
  }
  std::ostringstream rgb;
  rgb << std::fixed << std::setprecision(4);
  const auto emit = [&](const grid::VoxelSet& set, const char* color) {
    for (const auto& key : grid::SortedKeys(set)) {
      const auto c = grid::VoxelCenter(key, spec);
      rgb << c.x() << ' ' << c.y() << ' ' << c.z() << ' ' << color << '\n';
    }
  };
  emit(classes.tp, "0 255 0");
  emit(classes.fp, "0 0 255");
  emit(classes.fn, "255 0 0");
  WriteText(prefix + ".xyz", xyz.str());
  WriteText(prefix + "_classified.xyzrgb", rgb.str());
  summary.occupied = occupied.size();
  summary.tp = classes.tp.size();
  summary.fp = classes.fp.size();
  summary.fn = classes.fn.size();
  return summary;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Volumetric occupancy benchmark"};
  app.require_subcommand(1);

  auto* record = app.add_subcommand("record", "Record a synthetic episode");
  std::string record_config, record_out;
  std::vector<std::string> record_sets;
  uint64_t record_seed = 0;
  record->add_option("--config", record_config, "INI configuration file");
  record->add_option("--out", record_out, "Episode file")->required();
  auto* seed_opt = record->add_option("--seed", record_seed, "Scenario seed");
  record->add_option("--set", record_sets, "Override key=value");

  auto* run = app.add_subcommand("run", "Evaluate one configuration");
  RunFlags run_flags;
  std::string run_out, frames_out;
  AddRunFlags(run, &run_flags);
  run->add_option("--out", run_out, "Metrics CSV (default stdout)");
  run->add_option("--frames-out", frames_out, "Per-frame CSV");

  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter sweep");
  RunFlags sweep_flags;
  std::string sweep_param, sweep_values, sweep_out;
  int jobs = 1;
  AddRunFlags(sweep, &sweep_flags);
  sweep->add_option("--param", sweep_param, "Swept parameter")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")
      ->required();
  sweep->add_option("--out", sweep_out, "Metrics CSV (default stdout)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  auto* exporter = app.add_subcommand("export", "Export a voxel snapshot");
  RunFlags export_flags;
  std::string export_out;
  double export_time = 0.;
  AddRunFlags(exporter, &export_flags);
  exporter->add_option("--time", export_time, "Episode time in seconds")
      ->required();
  exporter->add_option("--out", export_out, "Output path prefix")->required();

  auto* report = app.add_subcommand("report", "Summarize metrics CSVs");
  std::vector<std::string> report_inputs;
  report->add_option("csv", report_inputs, "Metrics CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (record->parsed()) {
      simulate::ScenarioConfig scenario;
      if (!record_config.empty()) {
        LoadConfigFile(record_config, nullptr, &scenario);
      }
      for (const std::string& s : record_sets) {
        const auto [key, value] = SplitAssignment(s);
        ApplyScenarioSetting(&scenario, key, value);
      }
      if (seed_opt->count() > 0) scenario.seed = record_seed;
      try {
        simulate::ValidateScenario(scenario);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      simulate::RecordEpisode(scenario, record_out);
      err << "recorded " << scenario.duration_s << " s to " << record_out
          << "\n";
    } else if (run->parsed()) {
      const RunConfig config = BuildRunConfig(run_flags);
      EnsureEpisode(config);
      const auto eval =
          evaluate::EvaluateEpisode(config.episode, config.backend);
      const std::string csv =
          MetricsCsvHeader() + MetricsCsvRow(config, eval.report);
      if (run_out.empty()) {
        out << csv;
        PrintSummary(err, config, eval.report);
      } else {
        WriteText(run_out, csv);
        PrintSummary(out, config, eval.report);
      }
      if (!frames_out.empty()) WriteText(frames_out, FramesCsv(eval.frames));
      if (eval.report.frames_evaluated == 0) {
        err << "warning: no frame could be evaluated\n";
      }
      if (eval.replay.pending_frames > 0 && eval.replay.fused_frames == 0) {
        err << "warning: synchronizer timed out, a sensor never published\n";
      }
    } else if (sweep->parsed()) {
      const RunConfig base = BuildRunConfig(sweep_flags);
      const auto rows =
          RunSweep(base, sweep_param, SplitValues(sweep_values), jobs);
      std::string csv = MetricsCsvHeader();
      bool failed = false;
      for (const SweepRow& row : rows) {
        if (row.report) {
          csv += MetricsCsvRow(row.config, *row.report);
        } else {
          csv += FailedCsvRow(row.config);
          err << "row " << ParamsCell(row.config) << " failed: " << row.error
              << "\n";
          failed = true;
        }
      }
      if (sweep_out.empty()) {
        out << csv;
      } else {
        WriteText(sweep_out, csv);
      }
      if (failed) return kExitFailure;
    } else if (exporter->parsed()) {
      const RunConfig config = BuildRunConfig(export_flags);
      const ExportSummary s = ExportSnapshot(config, export_time, export_out);
      out << "snapshot "
          << (s.snapshot_ns ? std::to_string(*s.snapshot_ns) : "none")
          << " ns: " << s.occupied << " occupied, TP " << s.tp << ", FP "
          << s.fp << ", FN " << s.fn << "\n";
    } else if (report->parsed()) {
      out << std::left << std::setw(9) << "backend" << std::setw(56)
          << "params" << std::right << std::setw(8) << "frames"
          << std::setw(9) << "P" << std::setw(9) << "R" << std::setw(9)
          << "F1" << std::setw(9) << "F2" << std::setw(9) << "F3" << "\n";
      for (const std::string& path : report_inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::string line;
        std::getline(in, line);
        if (line + "\n" != MetricsCsvHeader()) {
          throw std::runtime_error("not a metrics CSV: " + path);
        }
        while (std::getline(in, line)) {
          const auto c = SplitCsvLine(line);
          if (c.size() != 14) throw std::runtime_error("bad row in " + path);
          out << std::left << std::setw(9) << c[0] << std::setw(56) << c[1]
              << std::right << std::setw(8) << c[2];
          for (int i = 7; i <= 11; ++i) {
            out << std::setw(9)
                << (c[i].empty() ? std::string("-")
                                 : Fixed3(std::stod(c[i])));
          }
          out << "\n";
        }
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace cli
}  // namespace vobench
