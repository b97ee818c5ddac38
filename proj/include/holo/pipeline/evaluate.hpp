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

#include <string>
#include <vector>

#include <json.hpp>

#include "holo/eval/metrics.hpp"
#include "holo/pipeline/dataset.hpp"
#include "holo/pipeline/pipeline.hpp"

namespace holo {

/// The same dataset generated twice: with elimination at the configured tau
/// and with elimination disabled (tau = 0).
struct AblationReport {
  double tau = 0.0;
  MetricsReport with_mask_predict;
  MetricsReport without_mask_predict;
  std::vector<RowError> errors;
};

/// Metrics of one pipeline configuration over the referenced rows. Rel. is
/// the mean ranker score of each chosen response against its context (0 for
/// samples without a response). Rows without a reference or that fail with
/// a PhaseError go to `errors`. Throws DataError if no row is usable.
MetricsReport evaluate_dataset(const PipelineConfig& config, const PipelineResources& resources,
                               const Dataset& dataset, std::vector<RowError>* errors = nullptr);

AblationReport mask_predict_ablation(const PipelineConfig& config, const PipelineResources& resources,
                                     const Dataset& dataset);

nlohmann::json to_json(const AblationReport& report);
/// Two-row table, "mask-predict on" then "mask-predict off".
std::string format_ablation_table(const AblationReport& report);

}  // namespace holo
