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

#include "holo/extract/support.hpp"

#include <algorithm>
#include <stdexcept>

namespace holo {

std::optional<std::size_t> Support::position(TokenId id) const {
  auto it = std::find(tokens.begin(), tokens.end(), id);
  if (it == tokens.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tokens.begin());
}

Support top_p_support(const SparseDist& dist, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("top-p threshold must lie in (0, 1]");
  if (dist.empty()) throw std::invalid_argument("top-p support of an empty distribution");

  Support support;
  const double target = p * (1.0 - kSupportMassSlack);
  for (const auto& e : dist.ranked()) {
    support.tokens.push_back(e.id);
    support.cumulative_mass += e.prob;
    if (support.cumulative_mass >= target) return support;
  }
  support.reached = false;
  return support;
}

}  // namespace holo
