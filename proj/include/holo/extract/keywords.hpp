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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holo/extract/support.hpp"
#include "holo/lm/vocabulary.hpp"

namespace holo {

struct Keyword {
  TokenId id;
  double marginal;

  friend bool operator==(const Keyword&, const Keyword&) = default;
};

/// Target-side keywords, descending marginal (ties by ascending id).
struct KeywordSet {
  std::vector<Keyword> keywords;

  std::size_t size() const { return keywords.size(); }
  bool empty() const { return keywords.empty(); }
  bool contains(TokenId id) const;
  double marginal(TokenId id) const;  // 0 when absent
};

/// Top-k tokens of `marginal`, intersected with the support.
KeywordSet select_keywords(const SparseDist& marginal, const Support& support, std::size_t k);

/// Blocks stopwords and punctuation-only tokens from keyword candidacy.
class StopwordFilter {
 public:
  /// Default English function-word list.
  StopwordFilter();
  explicit StopwordFilter(std::vector<std::string> words, bool block_punctuation = true);

  bool blocked(std::string_view token) const;
  /// Drops blocked tokens from a distribution (their mass is not moved).
  SparseDist apply(const SparseDist& dist, const Vocabulary& vocab) const;

  static const std::vector<std::string>& default_words();

 private:
  std::set<std::string, std::less<>> words_;
  bool block_punctuation_ = true;
};

bool is_punctuation(std::string_view token);

nlohmann::json to_json(const KeywordSet& keywords, const Vocabulary& vocab);

}  // namespace holo
