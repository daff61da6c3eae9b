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


#ifndef VOBENCH_EVALUATE_METRICS_H_
#define VOBENCH_EVALUATE_METRICS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace vobench {
namespace evaluate {

// All three return 0 when their denominator is 0.
double Precision(uint64_t tp, uint64_t fp);
double Recall(uint64_t tp, uint64_t fn);
double FBeta(double precision, double recall, double beta);

struct FrameRecord {
  uint64_t timestamp_ns = 0;
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;
  double precision = 0.;
  double recall = 0.;
  double f1 = 0.;
  double f2 = 0.;
  double f3 = 0.;
};

FrameRecord MakeFrameRecord(uint64_t timestamp_ns, uint64_t tp, uint64_t fp,
                            uint64_t fn);

struct MetricsReport {
  uint64_t frames_evaluated = 0;
  uint64_t frames_skipped = 0;
  uint64_t sum_tp = 0;
  uint64_t sum_fp = 0;
  uint64_t sum_fn = 0;
  // Pooled over summed counts.
  double precision = 0.;
  double recall = 0.;
  double f1 = 0.;
  double f2 = 0.;
  double f3 = 0.;
  // Means of per-frame values.
  double mean_precision = 0.;
  double mean_recall = 0.;
  // Skip diagnostics, reason -> count.
  std::map<std::string, uint64_t> skip_reasons;
};

// Throws std::invalid_argument on empty input.
MetricsReport Aggregate(std::span<const FrameRecord> records);

}  // namespace evaluate
}  // namespace vobench

#endif  // VOBENCH_EVALUATE_METRICS_H_
