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

#include <optional>
#include <span>
#include <vector>

#include "holo/corpus/importance.hpp"
#include "holo/insertion/generator.hpp"

namespace holo {

/// Count-based stand-in for a neural insertion network. For a gap between
/// left token l and right token r (sentence boundaries act as pseudo-tokens)
///
///   score(w)        = P_insert(w | l) * P(r | w)
///   score(NOINSERT) = P_stay(r | l)
///
/// normalized over all candidates, with add-k smoothing. A gap with no
/// support at all gets NOINSERT = 1.
class BigramInsertionModel final : public InsertionModel {
 public:
  /// Plain bigram statistics of the sentences: P_insert(w | l) and
  /// P_stay(r | l) are both the bigram P(next | l).
  ///
  /// Token ids follow `base` first, then new corpus tokens in order of first
  /// occurrence, so a model can share ids with a base language model.
  /// Throws DataError for an empty corpus.
  static BigramInsertionModel train(const Corpus& corpus, double smoothing = 0.0,
                                    const Vocabulary& base = Vocabulary());

  /// Gap statistics of coarse -> fine pairs. Tokens the fine side adds inside
  /// a coarse gap are replayed one per step, middle token first, and each
  /// counts as an insertion of w after its left and before its right
  /// neighbour at that step. Stays (l -> r) are counted from identity pairs
  /// {sentence, sentence} only, so include one per finished sentence.
  /// Insertions and stays share one distribution per l. Throws DataError if
  /// a coarse side is not a subsequence of its fine side or there are no
  /// pairs.
  static BigramInsertionModel train_from_pairs(std::span<const StagePair> pairs, double smoothing = 0.0,
                                               const Vocabulary& base = Vocabulary());

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::vector<GapDistribution> predict(TokenSpan context, TokenSpan tokens) const override;

  /// std::nullopt stands for the sentence boundary (start as `left`, end as
  /// `right`).
  double insert_prob(std::optional<TokenId> left, TokenId token) const;
  double stay_prob(std::optional<TokenId> left, std::optional<TokenId> right) const;
  double precede_prob(TokenId token, std::optional<TokenId> right) const;
  double smoothing() const { return smoothing_; }

 private:
  BigramInsertionModel(Vocabulary vocab, double smoothing) : vocab_(std::move(vocab)), smoothing_(smoothing) {}

  Vocabulary vocab_;
  double smoothing_ = 0.0;
  // Index V is the boundary pseudo-token: sentence start as a left
  // neighbour, sentence end as a right neighbour.
  std::vector<double> insert_;   // [l * V + w]       = P_insert(w | l)
  std::vector<double> stay_;     // [l * (V + 1) + r] = P_stay(r | l)
  std::vector<double> precede_;  // [r * V + w]       = P(r | w)
};

}  // namespace holo
