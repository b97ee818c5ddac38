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

#include "holo/lm/enumeration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holo {
namespace {

struct Walker {
  const LanguageModel& lm;
  TokenSpan context;
  std::size_t horizon;
  std::vector<std::vector<double>> marginals;
  TokenSeq path;

  // Depth-first over every sequence prefix. P(y_i = w) is the sum of the
  // joint probabilities of all length-i prefixes ending in w, which equals
  // the sum over complete length-N sequences because every continuation
  // distribution is summed out. Zero-probability subtrees are skipped.
  void walk(double joint) {
    const SparseDist next = lm.next_token_dist(context, path);
    const std::size_t depth = path.size();
    for (const auto& e : next.entries()) {
      const double p = joint * e.prob;
      marginals[depth][index_of(e.id)] += p;
      if (depth + 1 < horizon) {
        path.push_back(e.id);
        walk(p);
        path.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<SparseDist> exact_position_marginals(const LanguageModel& lm, TokenSpan context, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  const std::size_t v = lm.vocabulary().size();
  if (std::pow(static_cast<double>(v), horizon) > kMaxEnumeratedSequences) {
    throw EnumerationTooLarge("enumerating " + std::to_string(v) + "^" + std::to_string(horizon) +
                              " sequences exceeds the limit");
  }
  lm.vocabulary().check(context);
  Walker w{lm, context, static_cast<std::size_t>(horizon),
           std::vector<std::vector<double>>(static_cast<std::size_t>(horizon), std::vector<double>(v, 0.0)),
           {}};
  w.walk(1.0);
  std::vector<SparseDist> out;
  out.reserve(w.marginals.size());
  for (const auto& m : w.marginals) out.push_back(SparseDist::from_dense(m));
  return out;
}

}  // namespace holo
