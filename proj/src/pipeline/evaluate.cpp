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

#include "holo/pipeline/evaluate.hpp"

namespace holo {

MetricsReport evaluate_dataset(const PipelineConfig& config, const PipelineResources& resources,
                               const Dataset& dataset, std::vector<RowError>* errors) {
  std::vector<Words> references;
  std::vector<Words> hypotheses;
  double rel = 0.0;
  for (const auto& row : dataset.rows) {
    if (!row.reference) {
      if (errors) errors->push_back({row.line, "missing reference"});
      continue;
    }
    try {
      const PipelineResult result = run_pipeline(config, resources, row.context);
      references.push_back(resources.tokenizer.tokenize(*row.reference));
      if (result.chosen) {
        const Candidate& best = result.candidates[*result.chosen];
        hypotheses.push_back(best.words);
        rel += best.rank_score;
      } else {
        hypotheses.emplace_back();
      }
    } catch (const PhaseError& e) {
      if (errors) errors->push_back({row.line, e.what()});
    }
  }
  if (references.empty()) throw DataError("no usable rows to evaluate");
  MetricsReport report = compute_metrics(references, hypotheses, *resources.lm);
  report.rel = rel / static_cast<double>(references.size());
  return report;
}

AblationReport mask_predict_ablation(const PipelineConfig& config, const PipelineResources& resources,
                                     const Dataset& dataset) {
  AblationReport report;
  report.tau = config.tau;
  report.errors = dataset.errors;
  report.with_mask_predict = evaluate_dataset(config, resources, dataset, &report.errors);
  PipelineConfig off = config;
  off.tau = 0.0;
  // Rows fail identically in both runs; record them once.
  report.without_mask_predict = evaluate_dataset(off, resources, dataset);
  return report;
}

nlohmann::json to_json(const AblationReport& report) {
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : report.errors) errors.push_back(to_json(e));
  return {{"tau", report.tau},
          {"mask_predict_on", to_json(report.with_mask_predict)},
          {"mask_predict_off", to_json(report.without_mask_predict)},
          {"errors", errors}};
}

std::string format_ablation_table(const AblationReport& report) {
  const LabelledReport rows[] = {{"mask-predict on", report.with_mask_predict},
                                 {"mask-predict off", report.without_mask_predict}};
  return format_metrics_table(rows, "Setting");
}

}  // namespace holo
