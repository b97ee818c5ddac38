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

#include "holo/lm/vocabulary.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace holo {

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  for (auto& t : tokens) {
    if (ids_.contains(t)) throw DataError("duplicate vocabulary token '" + t + "'");
    add(t);
  }
}

TokenId Vocabulary::add(std::string_view token) {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  const TokenId id = token_id(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  return std::nullopt;
}

TokenId Vocabulary::id(std::string_view token) const {
  if (auto found = find(token)) return *found;
  throw UnknownTokenError(std::string(token));
}

const std::string& Vocabulary::token(TokenId id) const {
  if (!contains(id)) throw UnknownTokenError("#" + std::to_string(static_cast<std::int32_t>(id)));
  return tokens_[index_of(id)];
}

TokenSeq Vocabulary::encode(std::span<const std::string> tokens) const {
  TokenSeq ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id(t));
  return ids;
}

std::vector<std::string> Vocabulary::decode(TokenSpan ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(token(id));
  return out;
}

void Vocabulary::check(TokenSpan ids) const {
  for (TokenId id : ids) {
    if (!contains(id)) throw UnknownTokenError("#" + std::to_string(static_cast<std::int32_t>(id)));
  }
}

void Vocabulary::save(std::ostream& out) const {
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (vocab.find(line)) throw DataError("duplicate vocabulary token '" + line + "'");
    vocab.add(line);
  }
  return vocab;
}

Vocabulary Vocabulary::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vocabulary file " + path.string());
  return load(in);
}

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_tokens(std::span<const std::string> tokens, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += separator;
    out += tokens[i];
  }
  return out;
}

Corpus read_corpus(std::istream& in, const Tokenizer& tokenizer) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenizer.tokenize(line);
    if (!tokens.empty()) corpus.push_back(std::move(tokens));
  }
  return corpus;
}

Corpus read_corpus_file(const std::filesystem::path& path, const Tokenizer& tokenizer) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return read_corpus(in, tokenizer);
}

Vocabulary build_vocabulary(const Corpus& corpus) {
  Vocabulary vocab;
  for (const auto& sentence : corpus) {
    for (const auto& t : sentence) vocab.add(t);
  }
  return vocab;
}

}  // namespace holo
