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

#include "holo/lm/sparse_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace holo {

SparseDist::SparseDist(std::vector<DistEntry> entries, std::size_t vocab_size)
    : vocab_size_(vocab_size) {
  std::erase_if(entries, [](const DistEntry& e) { return e.prob == 0.0; });
  std::sort(entries.begin(), entries.end(),
            [](const DistEntry& a, const DistEntry& b) { return a.id < b.id; });
  double mass = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (index_of(e.id) >= vocab_size) {
      throw std::invalid_argument("distribution id " + std::to_string(index_of(e.id)) +
                                  " outside vocabulary of size " + std::to_string(vocab_size));
    }
    if (!(e.prob > 0.0 && e.prob <= 1.0 + kMassTolerance)) {
      throw std::invalid_argument("probability out of range for id " + std::to_string(index_of(e.id)));
    }
    if (i > 0 && entries[i - 1].id == e.id) {
      throw std::invalid_argument("duplicate id " + std::to_string(index_of(e.id)) + " in distribution");
    }
    mass += e.prob;
  }
  if (mass > 1.0 + kMassTolerance) {
    throw std::invalid_argument("distribution mass " + std::to_string(mass) + " exceeds 1");
  }
  entries_ = std::move(entries);
  mass_ = mass;
}

SparseDist SparseDist::from_dense(std::span<const double> probs) {
  std::vector<DistEntry> entries;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] != 0.0) entries.push_back({token_id(i), probs[i]});
  }
  return SparseDist(std::move(entries), probs.size());
}

double SparseDist::prob(TokenId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const DistEntry& e, TokenId key) { return e.id < key; });
  return (it != entries_.end() && it->id == id) ? it->prob : 0.0;
}

std::vector<double> SparseDist::to_dense() const {
  std::vector<double> dense(vocab_size_, 0.0);
  for (const auto& e : entries_) dense[index_of(e.id)] = e.prob;
  return dense;
}

std::vector<DistEntry> SparseDist::ranked() const {
  std::vector<DistEntry> out(entries_.begin(), entries_.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const DistEntry& a, const DistEntry& b) { return a.prob > b.prob; });
  return out;
}

SparseDist apply_temperature(const SparseDist& dist, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (temperature == 1.0 || dist.empty()) return dist;
  std::vector<DistEntry> scaled(dist.entries().begin(), dist.entries().end());
  double total = 0.0;
  for (auto& e : scaled) {
    e.prob = std::pow(e.prob, 1.0 / temperature);
    total += e.prob;
  }
  const double target = std::min(1.0, dist.mass());
  for (auto& e : scaled) e.prob = e.prob / total * target;
  return SparseDist(std::move(scaled), dist.vocab_size());
}

}  // namespace holo
