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

#include <atomic>
#include <cstdint>

#include "holo/common.hpp"
#include "holo/lm/sparse_dist.hpp"
#include "holo/lm/vocabulary.hpp"

namespace holo {

/// Log-probability reported for zero-probability events.
inline constexpr double kLogZero = -1e30;

/// log(p), or kLogZero when p is not positive.
double safe_log(double p);

/// One decoding step of a base model. Implementations must be safe for
/// concurrent queries once constructed; no query mutates state.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const Vocabulary& vocabulary() const = 0;

  /// Distribution of the next response token after `context` followed by the
  /// already generated `prefix`. With an empty prefix this is P(y1|X); with a
  /// one-token prefix P(y2|y1,X). Throws UnknownTokenError for ids outside
  /// the vocabulary.
  virtual SparseDist next_token_dist(TokenSpan context, TokenSpan prefix) const = 0;
};

/// Chain-rule log-probability of `seq` as a response to `context`. Returns
/// kLogZero as soon as any step has zero probability.
double sequence_logprob(const LanguageModel& lm, TokenSpan context, TokenSpan seq);

/// Forwards to another model and counts queries. Thread-safe.
class CountingLanguageModel final : public LanguageModel {
 public:
  explicit CountingLanguageModel(const LanguageModel& inner) : inner_(inner) {}

  const Vocabulary& vocabulary() const override { return inner_.vocabulary(); }
  SparseDist next_token_dist(TokenSpan context, TokenSpan prefix) const override;

  std::uint64_t calls() const { return calls_.load(); }
  void reset() { calls_.store(0); }

 private:
  const LanguageModel& inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

}  // namespace holo
