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
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/lm/language_model.hpp"

namespace holo {

/// An exact first-order Markov chain posing as a language model: the first
/// step is `pi`, every later step is the column of `trans` for the previous
/// token. The context is ignored by construction, which makes the marginal
/// estimator exact on it.
class ToyMarkovLM final : public LanguageModel {
 public:
  static constexpr double kTolerance = 1e-12;

  /// `trans` is column-major: trans[k * |V| + j] = P(next = j | prev = k).
  /// Throws std::invalid_argument unless pi and every column sum to one
  /// within kTolerance.
  ToyMarkovLM(Vocabulary vocab, std::vector<double> pi, std::vector<double> trans,
              std::string context_tag = "toy");

  const Vocabulary& vocabulary() const override { return vocab_; }
  SparseDist next_token_dist(TokenSpan context, TokenSpan prefix) const override;

  const std::vector<double>& pi() const { return pi_; }
  double transition(TokenId to, TokenId from) const {
    return trans_[index_of(from) * vocab_.size() + index_of(to)];
  }
  const std::string& context_tag() const { return tag_; }

  /// {"tokens": [...], "pi": [...], "trans": [[column 0], [column 1], ...]}
  nlohmann::json to_json() const;
  static ToyMarkovLM from_json(const nlohmann::json& j);
  static ToyMarkovLM load_file(const std::filesystem::path& path);

 private:
  Vocabulary vocab_;
  std::vector<double> pi_;
  std::vector<double> trans_;
  std::vector<SparseDist> columns_;
  SparseDist initial_;
  std::string tag_;
};

}  // namespace holo
