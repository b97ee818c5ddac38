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

#include "holo/insertion/generator.hpp"

namespace holo {

TokenSeq Hypothesis::ids() const {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.id);
  return out;
}

Hypothesis initial_hypothesis(std::span<const TokenId> chain) {
  Hypothesis h;
  for (TokenId id : chain) h.tokens.push_back({id, 1.0, true, 0});
  return h;
}

bool is_subsequence(TokenSpan needle, TokenSpan haystack) {
  std::size_t i = 0;
  for (TokenId t : haystack) {
    if (i < needle.size() && needle[i] == t) ++i;
  }
  return i == needle.size();
}

}  // namespace holo
