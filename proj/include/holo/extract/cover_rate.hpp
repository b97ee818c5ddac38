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

#include "holo/extract/keywords.hpp"
#include "holo/lm/language_model.hpp"

namespace holo {

/// Pulls ground-truth keywords out of a reference response.
class KeywordExtractor {
 public:
  virtual ~KeywordExtractor() = default;
  virtual std::vector<std::string> extract(std::span<const std::string> reference) const = 0;
};

/// Unique non-stopword tokens in first-occurrence order.
class ContentWordExtractor final : public KeywordExtractor {
 public:
  explicit ContentWordExtractor(StopwordFilter filter = StopwordFilter()) : filter_(std::move(filter)) {}
  std::vector<std::string> extract(std::span<const std::string> reference) const override;

 private:
  StopwordFilter filter_;
};

struct CoverSample {
  TokenSeq context;
  std::vector<std::string> reference;
};

struct CoverReport {
  double top_fraction = 0.01;
  std::size_t top_count = 0;  // ceil(top_fraction * |V|)
  std::size_t samples = 0;
  std::size_t skipped_samples = 0;  // references with no keywords
  std::size_t keywords = 0;
  std::size_t covered = 0;
  double rate = 0.0;  // covered / keywords
};

inline constexpr double kDefaultCoverTopFraction = 0.01;

/// Fraction of reference keywords ranked within the top
/// ceil(top_fraction * |V|) tokens of the first-step distribution. Only
/// tokens with non-zero probability are candidates. Throws
/// std::invalid_argument for an empty dataset or top_fraction outside (0, 1].
CoverReport cover_rate(const LanguageModel& lm, std::span<const CoverSample> dataset,
                       const KeywordExtractor& extractor, double top_fraction = kDefaultCoverTopFraction);

nlohmann::json to_json(const CoverReport& report);

}  // namespace holo
