// Copyright 2026 The holo-toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holo/pipeline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace holo {

BenchAggregate aggregate_rows(std::span<const BenchRow> rows, std::size_t skipped) {
  BenchAggregate a;
  a.samples = rows.size();
  a.skipped = skipped;
  if (rows.empty()) return a;
  double support = 0.0;
  for (const auto& r : rows) {
    support += static_cast<double>(r.support_size);
    a.total_base_model_calls += r.base_model_calls;
    a.total_ar_calls += r.ar_calls;
    a.mean_call_ratio += r.call_ratio;
    a.mean_depth_speedup += r.depth_speedup;
    a.total_wall_ms += r.wall_ms;
    a.max_peak_bytes = std::max(a.max_peak_bytes, r.peak_bytes);
  }
  const double n = static_cast<double>(rows.size());
  a.mean_support_size = support / n;
  a.mean_call_ratio /= n;
  a.mean_depth_speedup /= n;
  return a;
}

BenchReport bench(const PipelineConfig& config, const PipelineResources& resources, const Dataset& dataset,
                  const BenchOptions& options) {
  if (dataset.rows.empty() && dataset.errors.empty()) throw std::invalid_argument("bench dataset is empty");
  BenchReport report;
  report.errors = dataset.errors;
  for (const auto& row : dataset.rows) {
    if (!row.reference) {
      report.errors.push_back({row.line, "missing reference"});
      continue;
    }
    const auto reference = resources.tokenizer.tokenize(*row.reference);
    if (reference.empty()) {
      report.errors.push_back({row.line, "empty reference"});
      continue;
    }
    if (options.reset_peak) options.reset_peak();
    const auto start = std::chrono::steady_clock::now();
    PipelineResult result;
    try {
      result = run_pipeline(config, resources, row.context);
    } catch (const PhaseError& e) {
      report.errors.push_back({row.line, e.what()});
      continue;
    }
    const double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    BenchRow r;
    r.line = row.line;
    r.support_size = result.counters.support_size;
    r.base_model_calls = result.counters.base_model_calls;
    r.call_depth = result.counters.call_depth;
    r.ar_calls = reference.size();
    r.call_ratio = static_cast<double>(r.base_model_calls) / static_cast<double>(r.ar_calls);
    r.depth_speedup = static_cast<double>(r.ar_calls) / static_cast<double>(r.call_depth);
    if (options.record_timing) {
      r.wall_ms = wall;
      if (options.peak_bytes) r.peak_bytes = options.peak_bytes();
    }
    report.rows.push_back(r);
  }
  report.aggregate = aggregate_rows(report.rows, report.errors.size());
  return report;
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"line", r.line},
                    {"support_size", r.support_size},
                    {"base_model_calls", r.base_model_calls},
                    {"call_depth", r.call_depth},
                    {"ar_calls", r.ar_calls},
                    {"call_ratio", r.call_ratio},
                    {"depth_speedup", r.depth_speedup},
                    {"wall_ms", r.wall_ms},
                    {"peak_bytes", r.peak_bytes}});
  }
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : report.errors) errors.push_back(to_json(e));
  const BenchAggregate& a = report.aggregate;
  return {{"rows", rows},
          {"errors", errors},
          {"aggregate",
           {{"samples", a.samples},
            {"skipped", a.skipped},
            {"mean_support_size", a.mean_support_size},
            {"total_base_model_calls", a.total_base_model_calls},
            {"total_ar_calls", a.total_ar_calls},
            {"mean_call_ratio", a.mean_call_ratio},
            {"mean_depth_speedup", a.mean_depth_speedup},
            {"total_wall_ms", a.total_wall_ms},
            {"max_peak_bytes", a.max_peak_bytes}}}};
}

}  // namespace holo
