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

#include "holo/common.hpp"

namespace holo {

struct DistEntry {
  TokenId id;
  double prob;

  friend bool operator==(const DistEntry&, const DistEntry&) = default;
};

/// Sparse probability vector over a vocabulary. Entries are sorted by id,
/// strictly positive and sum to at most one; zero entries are never stored.
/// Mass below one is probability the producer did not report (truncated
/// backends) and is treated as leaked.
class SparseDist {
 public:
  static constexpr double kMassTolerance = 1e-9;

  SparseDist() = default;

  /// Sorts by id and drops zeros. Throws std::invalid_argument on duplicate
  /// ids, ids outside [0, vocab_size), probabilities outside [0, 1] or total
  /// mass above 1 + kMassTolerance.
  SparseDist(std::vector<DistEntry> entries, std::size_t vocab_size);

  static SparseDist from_dense(std::span<const double> probs);

  std::span<const DistEntry> entries() const { return entries_; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Zero for ids not stored.
  double prob(TokenId id) const;
  double mass() const { return mass_; }

  std::vector<double> to_dense() const;

  /// Entries by descending probability, ties by ascending id.
  std::vector<DistEntry> ranked() const;

  friend bool operator==(const SparseDist&, const SparseDist&) = default;

 private:
  std::vector<DistEntry> entries_;
  std::size_t vocab_size_ = 0;
  double mass_ = 0.0;
};

/// Sharpens (t < 1) or flattens (t > 1) a distribution: q_i^(1/t),
/// renormalized to the mass the input reported.
SparseDist apply_temperature(const SparseDist& dist, double temperature);

}  // namespace holo
