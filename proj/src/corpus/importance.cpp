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

#include "holo/corpus/importance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>

namespace holo {

PosTag parse_pos_tag(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "n" || t == "noun" || t.starts_with("nn") || t == "propn") return PosTag::kNoun;
  if (t == "v" || t == "verb" || t.starts_with("vb")) return PosTag::kVerb;
  if (t == "a" || t == "adj" || t == "adjective" || t.starts_with("jj")) return PosTag::kAdjective;
  if (t == "d" || t == "adv" || t == "adverb" || t.starts_with("rb")) return PosTag::kAdverb;
  return PosTag::kOther;
}

LexiconTagger LexiconTagger::load(std::istream& in) {
  std::map<std::string, PosTag, std::less<>> lexicon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError("lexicon line " + std::to_string(lineno) + " is not 'token<TAB>tag'");
    }
    lexicon.insert_or_assign(line.substr(0, tab), parse_pos_tag(std::string_view(line).substr(tab + 1)));
  }
  return LexiconTagger(std::move(lexicon));
}

LexiconTagger LexiconTagger::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return load(in);
}

PosTag LexiconTagger::tag(std::string_view token) const {
  auto it = lexicon_.find(token);
  return it == lexicon_.end() ? PosTag::kOther : it->second;
}

std::vector<bool> TopQuartileFlagger::flags(std::span<const std::string> sentence, const TfIdfTable& table) const {
  const auto raw = table.raw_scores(sentence);
  std::vector<std::size_t> order(sentence.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  const std::size_t top = (sentence.size() + 3) / 4;
  std::vector<bool> out(sentence.size(), false);
  for (std::size_t i = 0; i < top; ++i) out[order[i]] = true;
  return out;
}

double ImportanceWeights::pos_score(PosTag tag) const {
  switch (tag) {
    case PosTag::kNoun:
    case PosTag::kVerb:
      return noun_verb;
    case PosTag::kAdjective:
    case PosTag::kAdverb:
      return adjective_adverb;
    case PosTag::kOther:
      break;
  }
  return other;
}

ImportanceProfile importance_scores(std::span<const std::string> sentence, const TfIdfTable& table,
                                    const PosTagger& tagger, const KeywordFlagger& flagger,
                                    const ImportanceWeights& weights) {
  const auto norm = table.normalized_scores(sentence);
  const auto flags = flagger.flags(sentence, table);
  ImportanceProfile profile;
  profile.tokens.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    TokenImportance t;
    t.token = sentence[i];
    t.tfidf_norm = norm[i];
    t.pos_score = weights.pos_score(tagger.tag(sentence[i]));
    t.keyword_flag = flags[i] ? 1 : 0;
    t.total = t.tfidf_norm + t.pos_score + t.keyword_flag * weights.keyword;
    profile.tokens.push_back(std::move(t));
  }
  return profile;
}

std::vector<StagePair> stage_decompose(std::span<const std::string> sentence, const ImportanceProfile& profile,
                                       int stages) {
  if (stages < 1) throw std::invalid_argument("stage count must be at least 1");
  if (profile.tokens.size() != sentence.size()) {
    throw std::invalid_argument("importance profile does not match the sentence");
  }
  // Levels hold positions into the sentence, finest first.
  std::vector<std::vector<std::size_t>> levels;
  levels.emplace_back(sentence.size());
  std::iota(levels[0].begin(), levels[0].end(), 0);
  for (int k = 0; k < stages; ++k) {
    const auto& fine = levels.back();
    const std::size_t drop = fine.size() / 2;
    if (drop == 0) break;
    std::vector<std::size_t> by_importance = fine;
    // Most important first; earlier position first among equals.
    std::stable_sort(by_importance.begin(), by_importance.end(), [&](std::size_t a, std::size_t b) {
      return profile.tokens[a].total > profile.tokens[b].total;
    });
    std::vector<std::size_t> coarse(by_importance.begin(),
                                    by_importance.end() - static_cast<std::ptrdiff_t>(drop));
    std::sort(coarse.begin(), coarse.end());
    levels.push_back(std::move(coarse));
  }

  auto materialize = [&](const std::vector<std::size_t>& positions) {
    std::vector<std::string> out;
    out.reserve(positions.size());
    for (std::size_t p : positions) out.push_back(sentence[p]);
    return out;
  };
  std::vector<StagePair> pairs;
  for (std::size_t i = levels.size() - 1; i >= 1; --i) {
    pairs.push_back({materialize(levels[i]), materialize(levels[i - 1])});
  }
  return pairs;
}

nlohmann::json to_json(const StagePair& pair) { return {{"coarse", pair.coarse}, {"fine", pair.fine}}; }

}  // namespace holo
