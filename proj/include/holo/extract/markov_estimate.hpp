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
#include <span>
#include <vector>

#include <json.hpp>

#include "holo/extract/support.hpp"
#include "holo/lm/language_model.hpp"

namespace holo {

/// First-order Markov approximation of a base model's response process,
/// restricted to the top-p support S of the first step:
///
///   pi0(k)      = P(y1 = s_k | X)
///   M(j, k)     = P(y2 = s_j | y1 = s_k, X)         (column k, rows in S)
///   leak(k)     = 1 - sum_j M(j, k)                  (mass leaving S)
///   states[t]   = M^t pi0                            (no renormalization)
///
/// Since rows outside S are dropped, each state under-approximates the true
/// position marginal on S and its total mass never increases with t.
class MarkovEstimate {
 public:
  MarkovEstimate() = default;
  /// `transition` is column-major |S| x |S|. Throws std::invalid_argument on
  /// inconsistent sizes.
  MarkovEstimate(Support support, std::vector<double> pi0, std::vector<double> transition,
                 std::vector<double> leak, std::size_t vocab_size,
                 std::vector<std::vector<double>> states = {});

  const Support& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }

  std::span<const double> pi0() const { return pi0_; }
  /// Probability of moving from support slot `from` to slot `to`.
  double transition(std::size_t to, std::size_t from) const { return transition_[from * size() + to]; }
  std::span<const double> column(std::size_t from) const {
    return std::span<const double>(transition_).subspan(from * size(), size());
  }
  std::span<const double> leak() const { return leak_; }
  const std::vector<std::vector<double>>& states() const { return states_; }

  /// Same chain with different step states (used by propagate and tests).
  MarkovEstimate with_states(std::vector<std::vector<double>> states) const;

 private:
  Support support_;
  std::vector<double> pi0_;
  std::vector<double> transition_;
  std::vector<double> leak_;
  std::size_t vocab_size_ = 0;
  std::vector<std::vector<double>> states_;
};

struct BuildOptions {
  /// Applied to every base-model distribution before use.
  double temperature = 1.0;
  /// Threads for the |S| independent second-step queries.
  std::size_t workers = 1;
};

/// Issues exactly 1 + |S| base-model queries: one for P(y1|X) and one per
/// support token for its transition column. A failing column query is
/// rethrown as BackendError naming the support token.
MarkovEstimate build_markov(const LanguageModel& lm, TokenSpan context, double p, const BuildOptions& options = {});

struct PropagateOptions {
  /// Rescale every state to unit mass. Off by default: renormalizing voids
  /// the under-approximation guarantee.
  bool renormalize = false;
};

inline constexpr int kMaxPropagationSteps = 100000;

/// Fills states with pi0, M pi0, ..., M^(steps-1) pi0.
MarkovEstimate propagate(const MarkovEstimate& est, int steps, const PropagateOptions& options = {});

/// Average of the step states, as a distribution over the vocabulary
/// (non-zero only on S). Throws std::invalid_argument if no states exist.
SparseDist word_marginal(const MarkovEstimate& est);

/// Debug dump: support tokens, pi0, transition columns and leak.
nlohmann::json to_debug_json(const MarkovEstimate& est, const Vocabulary& vocab);

}  // namespace holo
