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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/chain/chain_builder.hpp"
#include "holo/corpus/importance.hpp"
#include "holo/eval/ranker.hpp"
#include "holo/extract/keywords.hpp"
#include "holo/insertion/generator.hpp"
#include "holo/lm/language_model.hpp"
#include "holo/pipeline/config.hpp"

namespace holo {

/// An error raised inside one pipeline phase. what() reads
/// "<phase>: <original message>".
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, const std::string& message)
      : Error(phase + ": " + message), phase_(std::move(phase)) {}
  const std::string& phase() const { return phase_; }

 private:
  std::string phase_;
};

/// Everything the pipeline needs besides the context. Built once, shared
/// read-only across samples and threads.
struct PipelineResources {
  std::unique_ptr<LanguageModel> lm;
  std::unique_ptr<InsertionModel> insertion;
  StopwordFilter stopwords;
  std::unique_ptr<Ranker> ranker;
  WhitespaceTokenizer tokenizer;
};

std::unique_ptr<LanguageModel> load_language_model(const PipelineConfig& config);
StopwordFilter load_stopwords(const PipelineConfig& config);
/// Coarse -> fine pairs of every sentence's importance decomposition (tf-idf
/// over `corpus`, top-quartile keyword flags), followed by the identity pair
/// {sentence, sentence} that marks the finished state.
std::vector<StagePair> stage_training_pairs(const Corpus& corpus, const PosTagger& tagger, int stages);
/// Loads the LM and trains the insertion model on top of the LM's
/// vocabulary. Throws DataError / BackendError.
PipelineResources load_resources(const PipelineConfig& config);

struct Candidate {
  KeywordChain chain;
  StageSequence trace;
  Words words;
  std::string text;
  double rank_score = 0.0;
  double joint_logprob = 0.0;
};

/// Counters per phase, so a change in one phase is visible in isolation.
struct PipelineCounters {
  std::uint64_t base_model_calls = 0;
  int call_depth = 0;  // sequential rounds of base-model queries
  std::size_t support_size = 0;
  std::size_t keywords = 0;
  std::size_t chains_built = 0;
  std::size_t chains_picked = 0;
  std::size_t insertion_stages = 0;  // summed over candidates
  std::size_t ranked = 0;
};

struct PhaseTimings {
  double extract_ms = 0.0;
  double chains_ms = 0.0;
  double generate_ms = 0.0;
  double rank_ms = 0.0;
  double total_ms() const { return extract_ms + chains_ms + generate_ms + rank_ms; }
};

struct PipelineResult {
  std::string context;
  KeywordSet keywords;
  std::vector<KeywordChain> chains;   // the picked top-Z
  std::vector<Candidate> candidates;  // one per picked chain, chain order
  std::optional<std::size_t> chosen;  // index into candidates
  std::string response;               // empty when no keyword was found
  PipelineCounters counters;
  PhaseTimings timings;
};

struct RunOptions {
  /// Threads for transition columns and per-chain generation.
  std::size_t workers = 1;
};

/// context -> keywords -> chains -> constrained generation -> ranking.
/// Errors are rethrown as PhaseError with the phase name (tokenize,
/// extract, chains, generate, rank).
PipelineResult run_pipeline(const PipelineConfig& config, const PipelineResources& resources,
                            const std::string& context, const RunOptions& options = {});

struct ResultJsonOptions {
  bool traces = false;
  bool timings = false;
};
/// `vocab` must cover generated tokens: pass the insertion model's
/// vocabulary, which extends the LM's with the same ids.
nlohmann::json to_json(const PipelineResult& result, const Vocabulary& vocab, const ResultJsonOptions& options = {});

}  // namespace holo
