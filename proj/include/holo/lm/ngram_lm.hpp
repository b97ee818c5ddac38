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
#include <filesystem>
#include <iosfwd>
#include <map>

#include "holo/lm/language_model.hpp"

namespace holo {

/// Count-based n-gram model with add-k smoothing. Histories never seen in
/// training back off to successively shorter ones, ending at the unigram
/// distribution; each level is normalized on its own so every returned
/// distribution sums to one.
///
/// The response history is context followed by prefix, so the first response
/// token is predicted from the tail of the context (or the unigram
/// distribution for an empty context).
class NgramLM final : public LanguageModel {
 public:
  static constexpr const char* kFileHeader = "HOLO-NGRAM v1";

  /// Throws DataError for an empty corpus, std::invalid_argument for
  /// order < 2 or negative smoothing.
  static NgramLM train(const Corpus& corpus, int order, double smoothing);

  const Vocabulary& vocabulary() const override { return vocab_; }
  SparseDist next_token_dist(TokenSpan context, TokenSpan prefix) const override;

  int order() const { return order_; }
  double smoothing() const { return smoothing_; }

  /// Raw count of `next` after `history` (empty history = unigram count).
  std::uint64_t count(TokenSpan history, TokenId next) const;

  void save(std::ostream& out) const;
  static NgramLM load(std::istream& in);
  void save_file(const std::filesystem::path& path) const;
  static NgramLM load_file(const std::filesystem::path& path);

  friend bool operator==(const NgramLM& a, const NgramLM& b);

 private:
  struct Successors {
    std::map<TokenId, std::uint64_t> next;
    std::uint64_t total = 0;
    friend bool operator==(const Successors&, const Successors&) = default;
  };

  NgramLM(Vocabulary vocab, int order, double smoothing)
      : vocab_(std::move(vocab)), order_(order), smoothing_(smoothing) {}

  void add_count(const TokenSeq& history, TokenId next, std::uint64_t n);
  SparseDist distribution(const Successors& successors) const;

  Vocabulary vocab_;
  int order_ = 2;
  double smoothing_ = 0.0;
  std::map<TokenSeq, Successors> counts_;
};

}  // namespace holo
