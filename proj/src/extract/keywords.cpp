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

#include "holo/extract/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace holo {

bool KeywordSet::contains(TokenId id) const {
  return std::any_of(keywords.begin(), keywords.end(), [id](const Keyword& k) { return k.id == id; });
}

double KeywordSet::marginal(TokenId id) const {
  for (const auto& k : keywords) {
    if (k.id == id) return k.marginal;
  }
  return 0.0;
}

KeywordSet select_keywords(const SparseDist& marginal, const Support& support, std::size_t k) {
  if (k < 1) throw std::invalid_argument("keyword count k must be at least 1");
  KeywordSet out;
  const auto ranked = marginal.ranked();
  const std::size_t top = std::min(k, ranked.size());
  for (std::size_t i = 0; i < top; ++i) {
    if (support.contains(ranked[i].id)) out.keywords.push_back({ranked[i].id, ranked[i].prob});
  }
  return out;
}

const std::vector<std::string>& StopwordFilter::default_words() {
  static const std::vector<std::string> words = {
      "a",     "an",   "the",  "and",  "or",    "but",  "if",    "of",   "to",   "in",    "on",
      "at",    "by",   "for",  "with", "from",  "as",   "is",    "are",  "was",  "were",  "be",
      "been",  "am",   "it",   "it's", "its",   "this", "that",  "these", "those", "i",   "i'm",
      "you",   "he",   "she",  "we",   "they",  "me",   "him",   "her",  "us",   "them",  "my",
      "your",  "our",  "their", "so",  "very",  "too",  "not",   "no",   "do",   "does",  "did",
      "will",  "would", "can", "could", "there", "here", "when", "then", "than", "just",  "also",
  };
  return words;
}

StopwordFilter::StopwordFilter() : StopwordFilter(default_words(), true) {}

StopwordFilter::StopwordFilter(std::vector<std::string> words, bool block_punctuation)
    : words_(words.begin(), words.end()), block_punctuation_(block_punctuation) {}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::ispunct(c) != 0; });
}

bool StopwordFilter::blocked(std::string_view token) const {
  if (block_punctuation_ && is_punctuation(token)) return true;
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return words_.contains(lower);
}

SparseDist StopwordFilter::apply(const SparseDist& dist, const Vocabulary& vocab) const {
  std::vector<DistEntry> kept;
  for (const auto& e : dist.entries()) {
    if (!blocked(vocab.token(e.id))) kept.push_back(e);
  }
  return SparseDist(std::move(kept), dist.vocab_size());
}

nlohmann::json to_json(const KeywordSet& keywords, const Vocabulary& vocab) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& k : keywords.keywords) arr.push_back({{"token", vocab.token(k.id)}, {"prob", k.marginal}});
  return arr;
}

}  // namespace holo
