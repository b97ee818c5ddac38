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

#include <vector>

#include <json.hpp>

#include "holo/chain/chain_builder.hpp"
#include "holo/lm/sparse_dist.hpp"
#include "holo/lm/vocabulary.hpp"

namespace holo {

/// What an insertion model predicts for one gap: a distribution over
/// vocabulary tokens plus the probability of inserting nothing. The two
/// parts sum to one.
struct GapDistribution {
  SparseDist insert;
  double no_insert = 1.0;
};

/// Scores every gap of a partial sentence at once: for n tokens it returns
/// n + 1 gap distributions (before the first token, between neighbours,
/// after the last).
class InsertionModel {
 public:
  virtual ~InsertionModel() = default;
  virtual const Vocabulary& vocabulary() const = 0;
  virtual std::vector<GapDistribution> predict(TokenSpan context, TokenSpan tokens) const = 0;
};

struct HypToken {
  TokenId id;
  double confidence = 1.0;
  bool is_protected = false;  // keyword-chain token, never removed
  int inserted_at = 0;        // stage that produced the token

  friend bool operator==(const HypToken&, const HypToken&) = default;
};

/// One stage Y^k of the insertion process.
struct Hypothesis {
  std::vector<HypToken> tokens;
  int stage_index = 0;
  /// Tokens proposed at this stage and dropped for low confidence.
  std::vector<HypToken> eliminated;

  TokenSeq ids() const;
};

struct StageSequence {
  std::vector<Hypothesis> stages;  // Y^0 .. Y^K
  bool converged = false;
  /// log p(Y^0): the log score of the seeding keyword chain.
  double chain_log_score = 0.0;

  const Hypothesis& final_hypothesis() const { return stages.back(); }
};

/// Y^0: the chain tokens, confidence 1, protected.
Hypothesis initial_hypothesis(std::span<const TokenId> chain);

/// One refinement stage: the most probable token (or nothing) is inserted
/// into every gap independently, then every unprotected token whose
/// confidence is below tau is removed.
Hypothesis stage_step(const InsertionModel& model, TokenSpan context, const Hypothesis& hyp, double tau);

/// Runs stage_step until two consecutive stages hold the same tokens or
/// max_stages steps have run.
StageSequence generate_constrained(const InsertionModel& model, TokenSpan context, const KeywordChain& chain,
                                   double tau, int max_stages);

/// log p(Y^0) + sum over stages of log p(y | Y^(k-1)) for the tokens each
/// stage inserted and kept.
double joint_stage_logprob(const StageSequence& seq);

/// True when `needle` occurs in `haystack` in order (not necessarily
/// contiguously).
bool is_subsequence(TokenSpan needle, TokenSpan haystack);

nlohmann::json trace_to_json(const StageSequence& seq, const Vocabulary& vocab);

}  // namespace holo
