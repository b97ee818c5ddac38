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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holo/corpus/tfidf.hpp"

namespace holo {

enum class PosTag { kNoun, kVerb, kAdjective, kAdverb, kOther };

/// Parses "noun"/"n"/"NN..."-style tags; anything unrecognised is kOther.
PosTag parse_pos_tag(std::string_view tag);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual PosTag tag(std::string_view token) const = 0;
};

/// Tags nothing.
class NullTagger final : public PosTagger {
 public:
  PosTag tag(std::string_view) const override { return PosTag::kOther; }
};

/// Word -> tag lookup from a "token<TAB>tag" lexicon file.
class LexiconTagger final : public PosTagger {
 public:
  explicit LexiconTagger(std::map<std::string, PosTag, std::less<>> lexicon) : lexicon_(std::move(lexicon)) {}
  static LexiconTagger load(std::istream& in);
  static LexiconTagger load_file(const std::filesystem::path& path);

  PosTag tag(std::string_view token) const override;
  std::size_t size() const { return lexicon_.size(); }

 private:
  std::map<std::string, PosTag, std::less<>> lexicon_;
};

/// Marks which tokens of a sentence count as keywords.
class KeywordFlagger {
 public:
  virtual ~KeywordFlagger() = default;
  virtual std::vector<bool> flags(std::span<const std::string> sentence, const TfIdfTable& table) const = 0;
};

/// Flags the top quarter (rounded up) of positions by raw tf-idf within the
/// sentence; ties go to the earlier position. A cheap stand-in for a real
/// keyword extractor.
class TopQuartileFlagger final : public KeywordFlagger {
 public:
  std::vector<bool> flags(std::span<const std::string> sentence, const TfIdfTable& table) const override;
};

class NoKeywordFlagger final : public KeywordFlagger {
 public:
  std::vector<bool> flags(std::span<const std::string> sentence, const TfIdfTable&) const override {
    return std::vector<bool>(sentence.size(), false);
  }
};

struct ImportanceWeights {
  double noun_verb = 200.0;
  double adjective_adverb = 100.0;
  double other = 0.0;
  double keyword = 300.0;

  double pos_score(PosTag tag) const;
};

struct TokenImportance {
  std::string token;
  double tfidf_norm = 1.0;
  double pos_score = 0.0;
  int keyword_flag = 0;
  double total = 0.0;  // tfidf_norm + pos_score + keyword_flag * keyword weight
};

struct ImportanceProfile {
  std::vector<TokenImportance> tokens;
};

ImportanceProfile importance_scores(std::span<const std::string> sentence, const TfIdfTable& table,
                                    const PosTagger& tagger, const KeywordFlagger& flagger,
                                    const ImportanceWeights& weights = {});

/// A coarse sequence and the finer one it expands into.
struct StagePair {
  std::vector<std::string> coarse;
  std::vector<std::string> fine;

  friend bool operator==(const StagePair&, const StagePair&) = default;
};

/// Splits a sentence into nested subsequences X^0 < X^1 < ... < X^K = sentence.
/// Each coarser level drops the floor(n/2) least important tokens of the
/// finer one (later positions go first on ties) and keeps order. Stops
/// early once a level can no longer shrink. Pairs are returned coarse to
/// fine: (X^0, X^1), ..., (X^(K-1), X^K).
std::vector<StagePair> stage_decompose(std::span<const std::string> sentence, const ImportanceProfile& profile,
                                       int stages);

/// {"coarse": [...], "fine": [...]}
nlohmann::json to_json(const StagePair& pair);

}  // namespace holo
