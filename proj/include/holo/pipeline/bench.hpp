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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "holo/pipeline/dataset.hpp"
#include "holo/pipeline/pipeline.hpp"

namespace holo {

/// Counters for one sample. ar_calls is what token-by-token decoding of the
/// reference would cost: one base-model call per reference token.
struct BenchRow {
  std::size_t line = 0;
  std::size_t support_size = 0;
  std::uint64_t base_model_calls = 0;
  int call_depth = 0;
  std::size_t ar_calls = 0;
  double call_ratio = 0.0;     // base_model_calls / ar_calls
  double depth_speedup = 0.0;  // ar_calls / call_depth
  double wall_ms = 0.0;
  std::size_t peak_bytes = 0;
};

struct BenchAggregate {
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double mean_support_size = 0.0;
  std::uint64_t total_base_model_calls = 0;
  std::uint64_t total_ar_calls = 0;
  double mean_call_ratio = 0.0;
  double mean_depth_speedup = 0.0;
  double total_wall_ms = 0.0;
  std::size_t max_peak_bytes = 0;
  friend bool operator==(const BenchAggregate&, const BenchAggregate&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<RowError> errors;  // malformed or failing rows, skipped
  BenchAggregate aggregate;
};

/// Derived from the rows alone; `skipped` is taken as given.
BenchAggregate aggregate_rows(std::span<const BenchRow> rows, std::size_t skipped);

struct BenchOptions {
  /// Zero wall_ms and peak_bytes so reports compare byte-for-byte.
  bool record_timing = true;
  /// Allocator high-water hooks; both unset means peak_bytes stays 0.
  std::function<void()> reset_peak;
  std::function<std::size_t()> peak_bytes;
};

/// Runs the pipeline on every row in order. Rows without a reference, with
/// an empty reference, or whose run fails with a DataError are recorded in
/// `errors` and skipped. Throws std::invalid_argument for an empty dataset.
BenchReport bench(const PipelineConfig& config, const PipelineResources& resources, const Dataset& dataset,
                  const BenchOptions& options = {});

nlohmann::json to_json(const BenchReport& report);

}  // namespace holo
