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

#include "holo/lm/language_model.hpp"

#include <cmath>
#include <stdexcept>

namespace holo {

double safe_log(double p) { return p > 0.0 ? std::log(p) : kLogZero; }

double sequence_logprob(const LanguageModel& lm, TokenSpan context, TokenSpan seq) {
  if (seq.empty()) throw std::invalid_argument("sequence_logprob needs a non-empty sequence");
  lm.vocabulary().check(seq);
  double total = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double p = lm.next_token_dist(context, seq.first(i)).prob(seq[i]);
    if (!(p > 0.0)) return kLogZero;
    total += std::log(p);
  }
  return total;
}

SparseDist CountingLanguageModel::next_token_dist(TokenSpan context, TokenSpan prefix) const {
  calls_.fetch_add(1);
  return inner_.next_token_dist(context, prefix);
}

}  // namespace holo
