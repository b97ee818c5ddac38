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

#include "holo/extract/cover_rate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace holo {

std::vector<std::string> ContentWordExtractor::extract(std::span<const std::string> reference) const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& t : reference) {
    if (filter_.blocked(t) || seen.contains(t)) continue;
    seen.insert(t);
    out.push_back(t);
  }
  return out;
}

CoverReport cover_rate(const LanguageModel& lm, std::span<const CoverSample> dataset,
                       const KeywordExtractor& extractor, double top_fraction) {
  if (dataset.empty()) throw std::invalid_argument("cover rate needs a non-empty dataset");
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) throw std::invalid_argument("top fraction must lie in (0, 1]");

  const Vocabulary& vocab = lm.vocabulary();
  CoverReport report;
  report.top_fraction = top_fraction;
  report.top_count = static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(vocab.size())));

  for (const auto& sample : dataset) {
    ++report.samples;
    const auto keywords = extractor.extract(sample.reference);
    if (keywords.empty()) {
      ++report.skipped_samples;
      continue;
    }
    auto ranked = lm.next_token_dist(sample.context, {}).ranked();
    if (ranked.size() > report.top_count) ranked.resize(report.top_count);
    for (const auto& kw : keywords) {
      ++report.keywords;
      const auto id = vocab.find(kw);
      if (id && std::any_of(ranked.begin(), ranked.end(), [&](const DistEntry& e) { return e.id == *id; })) {
        ++report.covered;
      }
    }
  }
  report.rate = report.keywords == 0 ? 0.0 : static_cast<double>(report.covered) / static_cast<double>(report.keywords);
  return report;
}

nlohmann::json to_json(const CoverReport& r) {
  return {{"cover_rate", r.rate},         {"covered", r.covered},
          {"keywords", r.keywords},       {"samples", r.samples},
          {"skipped_samples", r.skipped_samples}, {"top_fraction", r.top_fraction},
          {"top_count", r.top_count}};
}

}  // namespace holo
