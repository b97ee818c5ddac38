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

#include <span>
#include <string>
#include <vector>

#include "holo/extract/keywords.hpp"

namespace holo {

using Words = std::vector<std::string>;

/// Relevance of a candidate response to a context, in [0, 1]. Must be
/// deterministic; higher is more relevant.
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual double score(std::span<const std::string> context, std::span<const std::string> candidate) const = 0;
};

/// Jaccard overlap of content tokens, blended with a length preference:
///   (1 - w) * |C n R| / |C u R| + w * min(1, |candidate| / preferred_length)
class LexicalRanker final : public Ranker {
 public:
  struct Options {
    double length_weight = 0.2;
    double preferred_length = 8.0;
  };

  LexicalRanker() : LexicalRanker(Options{}) {}
  explicit LexicalRanker(Options options, StopwordFilter filter = StopwordFilter());

  double score(std::span<const std::string> context, std::span<const std::string> candidate) const override;

 private:
  Options options_;
  StopwordFilter filter_;
};

struct RankedCandidate {
  std::size_t index;  // position in the input list
  double score;
};

/// Stable descending sort by ranker score; ties keep input order.
std::vector<RankedCandidate> rank_candidates(const Ranker& ranker, std::span<const std::string> context,
                                             std::span<const Words> candidates);

struct RankerEvalItem {
  Words context;
  Words positive;
  std::vector<Words> negatives;  // exactly 9
};

/// Fraction of items whose top-ranked candidate is the positive. Negatives
/// are listed before the positive so a tie never counts as a hit. Throws
/// std::invalid_argument unless every item has exactly 9 negatives.
double precision_at_1_of_10(const Ranker& ranker, std::span<const RankerEvalItem> items);

}  // namespace holo
