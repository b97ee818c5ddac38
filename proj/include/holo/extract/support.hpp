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

#include <optional>
#include <vector>

#include "holo/lm/sparse_dist.hpp"

namespace holo {

/// Smallest set of tokens whose first-step mass reaches p.
struct Support {
  /// Descending probability, ties by ascending id.
  std::vector<TokenId> tokens;
  double cumulative_mass = 0.0;
  /// False when the distribution reports less than p in total (truncated
  /// remote backends); `tokens` then holds everything reported.
  bool reached = true;

  std::size_t size() const { return tokens.size(); }
  std::optional<std::size_t> position(TokenId id) const;
  bool contains(TokenId id) const { return position(id).has_value(); }
};

/// Relative slack on the `mass >= p` comparison so that, e.g., 0.6 + 0.3
/// reaches p = 0.9 despite binary rounding.
inline constexpr double kSupportMassSlack = 1e-12;

/// Throws std::invalid_argument unless 0 < p <= 1 and dist is non-empty.
Support top_p_support(const SparseDist& dist, double p);

}  // namespace holo
