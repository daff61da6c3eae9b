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


#include "vobench/evaluate/metrics.h"

#include <stdexcept>

namespace vobench {
namespace evaluate {

double Precision(uint64_t tp, uint64_t fp) {
  return tp + fp == 0 ? 0. : static_cast<double>(tp) / (tp + fp);
}

double Recall(uint64_t tp, uint64_t fn) {
  return tp + fn == 0 ? 0. : static_cast<double>(tp) / (tp + fn);
}

double FBeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denominator = b2 * precision + recall;
  if (denominator <= 0.) return 0.;
  return (1. + b2) * precision * recall / denominator;
}

FrameRecord MakeFrameRecord(uint64_t timestamp_ns, uint64_t tp, uint64_t fp,
                            uint64_t fn) {
  FrameRecord r;
  r.timestamp_ns = timestamp_ns;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = Precision(tp, fp);
  r.recall = Recall(tp, fn);
  r.f1 = FBeta(r.precision, r.recall, 1.);
  r.f2 = FBeta(r.precision, r.recall, 2.);
  r.f3 = FBeta(r.precision, r.recall, 3.);
  return r;
}

MetricsReport Aggregate(std::span<const FrameRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("cannot aggregate zero frames");
  }
  MetricsReport report;
  double sum_p = 0.;
  double sum_r = 0.;
  for (const FrameRecord& r : records) {
    report.sum_tp += r.tp;
    report.sum_fp += r.fp;
    report.sum_fn += r.fn;
    sum_p += r.precision;
    sum_r += r.recall;
  }
  report.frames_evaluated = records.size();
  report.precision = Precision(report.sum_tp, report.sum_fp);
  report.recall = Recall(report.sum_tp, report.sum_fn);
  report.f1 = FBeta(report.precision, report.recall, 1.);
  report.f2 = FBeta(report.precision, report.recall, 2.);
  report.f3 = FBeta(report.precision, report.recall, 3.);
  report.mean_precision = sum_p / records.size();
  report.mean_recall = sum_r / records.size();
  return report;
}

}  // namespace evaluate
}  // namespace vobench
