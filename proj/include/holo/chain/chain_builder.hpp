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

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "holo/extract/keywords.hpp"
#include "holo/extract/markov_estimate.hpp"

namespace holo {

/// Ordered keywords with their chain probability
///   P(C|X) = pi0(c1) * prod_{i>=2} P(w = c_i|X) * M(c_i | c_{i-1}).
struct KeywordChain {
  std::vector<TokenId> tokens;
  double score = 0.0;
  double log_score = kLogZero;

  friend bool operator==(const KeywordChain&, const KeywordChain&) = default;
};

struct ChainOptions {
  std::size_t max_length = 7;  // L
  std::size_t beam_k = 3;      // successors tried per extension
  double threshold = 1e-8;     // extensions scoring below this are dropped
  /// Refuse instances whose worst-case expansion count exceeds this.
  double max_expansions = 5e6;
};

/// Grows chains from every keyword. Each extension appends one of the
/// beam_k unused keywords with the highest non-zero transition probability
/// from the chain's last token (ties by ascending id). A chain is emitted
/// when it reaches max_length or none of its extensions survives the
/// threshold. Result is sorted by chain_order.
std::vector<KeywordChain> build_chains(const KeywordSet& keywords, const MarkovEstimate& est,
                                       const ChainOptions& options = {});

/// Log of the chain probability; kLogZero when any factor is zero. Throws
/// std::invalid_argument for tokens outside the support.
double chain_log_probability(std::span<const TokenId> chain, const MarkovEstimate& est, const SparseDist& marginal);
double chain_probability(std::span<const TokenId> chain, const MarkovEstimate& est, const SparseDist& marginal);

/// Descending score, then lexicographic token ids.
bool chain_order(const KeywordChain& a, const KeywordChain& b);

std::vector<KeywordChain> pick_top_z(std::vector<KeywordChain> chains, std::size_t z);

/// {"tokens": [...], "score": ...}
nlohmann::json to_json(const KeywordChain& chain, const Vocabulary& vocab);
KeywordChain chain_from_json(const nlohmann::json& j, const Vocabulary& vocab);

}  // namespace holo
