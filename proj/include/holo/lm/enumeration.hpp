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

#include "holo/lm/language_model.hpp"

namespace holo {

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr double kMaxEnumeratedSequences = 1e7;

/// Exact per-position marginals P(y_i = . | X), i = 1..horizon, obtained by
/// enumerating every response prefix up to length `horizon` and summing
/// chain-rule joint probabilities. Only `lm` itself is queried and no Markov
/// assumption is made; this is the ground truth the estimator is checked
/// against.
///
/// Throws EnumerationTooLarge when |V|^horizon exceeds
/// kMaxEnumeratedSequences.
std::vector<SparseDist> exact_position_marginals(const LanguageModel& lm, TokenSpan context, int horizon);

}  // namespace holo
