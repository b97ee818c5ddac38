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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holo/common.hpp"

namespace holo {

/// Bidirectional token <-> id map. Ids are dense and assigned in insertion
/// order.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws DataError on duplicate tokens.
  explicit Vocabulary(std::vector<std::string> tokens);

  /// Returns the existing id when the token is already present.
  TokenId add(std::string_view token);

  std::optional<TokenId> find(std::string_view token) const;
  TokenId id(std::string_view token) const;            // throws UnknownTokenError
  const std::string& token(TokenId id) const;          // throws UnknownTokenError
  bool contains(TokenId id) const { return index_of(id) < tokens_.size(); }
  std::size_t size() const { return tokens_.size(); }
  std::span<const std::string> tokens() const { return tokens_; }

  TokenSeq encode(std::span<const std::string> tokens) const;
  std::vector<std::string> decode(TokenSpan ids) const;

  /// Throws UnknownTokenError naming the first id outside the vocabulary.
  void check(TokenSpan ids) const;

  /// One token per line.
  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);
  static Vocabulary load_file(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, TokenId, std::less<>> ids_;
};

/// Splits raw text into tokens.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
};

class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::vector<std::string> tokenize(std::string_view text) const override;
};

std::string join_tokens(std::span<const std::string> tokens, std::string_view separator);

using Corpus = std::vector<std::vector<std::string>>;

/// UTF-8 text, one sentence per line. Blank lines are skipped.
Corpus read_corpus(std::istream& in, const Tokenizer& tokenizer);
Corpus read_corpus_file(const std::filesystem::path& path, const Tokenizer& tokenizer);

/// Vocabulary over every corpus token in first-occurrence order.
Vocabulary build_vocabulary(const Corpus& corpus);

}  // namespace holo
