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

#include "holo/eval/ranker.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace holo {

LexicalRanker::LexicalRanker(Options options, StopwordFilter filter)
    : options_(options), filter_(std::move(filter)) {
  if (!(options_.length_weight >= 0.0 && options_.length_weight <= 1.0)) {
    throw std::invalid_argument("ranker length weight must lie in [0, 1]");
  }
  if (!(options_.preferred_length > 0.0)) throw std::invalid_argument("preferred length must be positive");
}

double LexicalRanker::score(std::span<const std::string> context, std::span<const std::string> candidate) const {
  auto content = [this](std::span<const std::string> words) {
    std::set<std::string_view> out;
    for (const auto& w : words) {
      if (!filter_.blocked(w)) out.insert(w);
    }
    return out;
  };
  const auto a = content(context);
  const auto b = content(candidate);
  std::size_t common = 0;
  for (auto w : b) common += a.count(w);
  const std::size_t uni = a.size() + b.size() - common;
  const double jaccard = uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
  const double length = std::min(1.0, static_cast<double>(candidate.size()) / options_.preferred_length);
  return (1.0 - options_.length_weight) * jaccard + options_.length_weight * length;
}

std::vector<RankedCandidate> rank_candidates(const Ranker& ranker, std::span<const std::string> context,
                                             std::span<const Words> candidates) {
  if (candidates.empty()) throw std::invalid_argument("rank_candidates needs at least one candidate");
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out.push_back({i, ranker.score(context, candidates[i])});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedCandidate& a, const RankedCandidate& b) { return a.score > b.score; });
  return out;
}

double precision_at_1_of_10(const Ranker& ranker, std::span<const RankerEvalItem> items) {
  if (items.empty()) throw std::invalid_argument("P@1/10 needs at least one item");
  std::size_t hits = 0;
  for (const auto& item : items) {
    if (item.negatives.size() != 9) {
      throw std::invalid_argument("P@1/10 items need exactly 10 candidates (1 positive, 9 negatives)");
    }
    std::vector<Words> candidates = item.negatives;
    candidates.push_back(item.positive);
    if (rank_candidates(ranker, item.context, candidates).front().index == 9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(items.size());
}

}  // namespace holo
