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
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

namespace holo {

enum class Backend { kNgram, kToy, kRemote };
/// How the insertion model's corpus is turned into training sentences.
enum class InsertionTraining {
  kSentences,  // the corpus sentences as they are
  kStages,     // every level of each sentence's importance decomposition
};

struct PipelineConfig {
  // Extraction.
  double p = 0.9;            // top-p mass of the first-step support
  int steps = 0;             // T, positions averaged; 0 means max_chain_length
  std::size_t keywords = 20;  // k
  double temperature = 1.0;
  bool renormalize = false;
  // Chains.
  std::size_t max_chain_length = 7;  // L
  std::size_t chains = 5;            // Z
  std::size_t beam_k = 3;
  double chain_threshold = 1e-8;
  // Generation.
  double tau = 0.2;
  int max_stages = 8;
  // Backend language model.
  Backend backend = Backend::kNgram;
  std::filesystem::path lm_path;
  std::filesystem::path vocab_path;  // remote backend only
  std::string remote_url;
  int remote_top_n = 64;
  // Insertion model.
  std::filesystem::path insertion_corpus;
  double insertion_smoothing = 0.0;
  InsertionTraining insertion_training = InsertionTraining::kStages;
  int decompose_stages = 2;
  std::filesystem::path lexicon;  // POS lexicon for decomposition; empty = none
  // Keyword filtering; empty path = built-in English list.
  std::filesystem::path stopwords;
  bool filter_stopwords = true;
  // Ranking and output.
  double ranker_length_weight = 0.2;
  double ranker_preferred_length = 8.0;
  std::string separator = " ";
  std::size_t workers = 1;

  static constexpr int kMaxSteps = 100000;

  int effective_steps() const { return steps == 0 ? static_cast<int>(max_chain_length) : steps; }
  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
};

/// Relative paths resolve against `base_dir`. Unknown keys and ill-typed
/// values throw DataError.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const PipelineConfig& config);

/// Applies one "key=value" override to a config object. The value is parsed
/// as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& config, std::string_view assignment);

/// Reads a JSON config file, applies overrides, validates.
PipelineConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

}  // namespace holo
