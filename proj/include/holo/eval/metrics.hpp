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

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/eval/ranker.hpp"
#include "holo/lm/language_model.hpp"

namespace holo {

// Per-sample building blocks.
double unigram_f1(std::span<const std::string> reference, std::span<const std::string> hypothesis);
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);
/// LCS-based F-measure. beta = infinity (the default) reduces to LCS recall.
double rouge_l(std::span<const std::string> reference, std::span<const std::string> hypothesis,
               double beta = std::numeric_limits<double>::infinity());

/// Corpus BLEU with uniform weights over 1..max_order, clipped counts summed
/// over samples, add-one smoothing on orders >= 2 and the usual brevity
/// penalty on total lengths.
double corpus_bleu(std::span<const Words> references, std::span<const Words> hypotheses, int max_order);
/// Unique bigrams over total bigrams, across all hypotheses.
double distinct_2(std::span<const Words> hypotheses);

/// Per-token probabilities are floored here before taking logs so that
/// perplexity stays finite.
inline constexpr double kPerplexityProbFloor = 1e-12;
double perplexity(const LanguageModel& lm, std::span<const Words> hypotheses);

struct MetricsReport {
  double f1 = 0.0;
  double rouge_l = 0.0;
  double bleu2 = 0.0;
  double bleu4 = 0.0;
  double distinct2 = 0.0;
  double ppl = 1.0;
  std::optional<double> rel;  // mean ranker score, when contexts are known
  std::size_t sample_count = 0;
};

/// F1 and ROUGE-L are means over samples, BLEU and Distinct-2 are corpus
/// level, PPL is exp(-total log-prob / total tokens) of the hypotheses under
/// `lm` (tokens unknown to `lm` are scored at the floor). Throws
/// std::invalid_argument on empty or mismatched inputs.
MetricsReport compute_metrics(std::span<const Words> references, std::span<const Words> hypotheses,
                              const LanguageModel& lm);

nlohmann::json to_json(const MetricsReport& report);

/// A labelled row of the text report.
struct LabelledReport {
  std::string label;
  MetricsReport report;
};

/// Fixed-width table in the column order F1, Rouge-L, BLEU-2, BLEU-4,
/// Distinct-2, PPL, Rel. (F1 through Distinct-2 as percentages), preceded by
/// notes on the substituted PPL and Rel. scorers.
std::string format_metrics_table(std::span<const LabelledReport> rows, const std::string& label_header);

}  // namespace holo
