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

#include "holo/insertion/bigram_insertion_model.hpp"

#include <span>

#include "holo/kernels/kernels.hpp"

namespace holo {
namespace {

using Counts = std::vector<std::vector<double>>;

Vocabulary extend(const Vocabulary& base, const Corpus& corpus) {
  Vocabulary vocab = base;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence) vocab.add(token);
  }
  return vocab;
}

// Row-normalizes counts[row][0..width) with add-k smoothing; rows without
// observations stay zero.
std::vector<double> normalize_rows(const Counts& counts, std::size_t width, double k) {
  std::vector<double> out(counts.size() * width, 0.0);
  for (std::size_t row = 0; row < counts.size(); ++row) {
    double total = 0.0;
    for (double c : counts[row]) total += c;
    const double denom = total + k * static_cast<double>(width);
    if (denom == 0.0) continue;
    for (std::size_t j = 0; j < width; ++j) out[row * width + j] = (counts[row][j] + k) / denom;
  }
  return out;
}

}  // namespace

BigramInsertionModel BigramInsertionModel::train(const Corpus& corpus, double smoothing, const Vocabulary& base) {
  if (corpus.empty()) throw DataError("cannot train an insertion model on an empty corpus");
  if (!(smoothing >= 0.0)) throw std::invalid_argument("smoothing must be non-negative");
  BigramInsertionModel model(extend(base, corpus), smoothing);
  const std::size_t v = model.vocab_.size();
  const std::size_t boundary = v;
  // follow[l][x]: l in tokens + start, x in tokens + end.
  Counts follow(v + 1, std::vector<double>(v + 1, 0.0));
  for (const auto& sentence : corpus) {
    std::size_t prev = boundary;
    for (TokenId id : model.vocab_.encode(sentence)) {
      ++follow[prev][index_of(id)];
      prev = index_of(id);
    }
    ++follow[prev][boundary];
  }
  model.stay_ = normalize_rows(follow, v + 1, smoothing);
  model.insert_.assign((v + 1) * v, 0.0);
  model.precede_.assign((v + 1) * v, 0.0);
  for (std::size_t l = 0; l <= v; ++l) {
    for (std::size_t w = 0; w < v; ++w) model.insert_[l * v + w] = model.stay_[l * (v + 1) + w];
  }
  for (std::size_t r = 0; r <= v; ++r) {
    for (std::size_t w = 0; w < v; ++w) model.precede_[r * v + w] = model.stay_[w * (v + 1) + r];
  }
  return model;
}

BigramInsertionModel BigramInsertionModel::train_from_pairs(std::span<const StagePair> pairs, double smoothing,
                                                            const Vocabulary& base) {
  if (pairs.empty()) throw DataError("cannot train an insertion model without stage pairs");
  if (!(smoothing >= 0.0)) throw std::invalid_argument("smoothing must be non-negative");
  Corpus all;
  for (const auto& p : pairs) all.push_back(p.fine);
  BigramInsertionModel model(extend(base, all), smoothing);
  const std::size_t v = model.vocab_.size();
  const std::size_t boundary = v;

  // Per left neighbour: insertions (first v columns) then stays (v + 1).
  Counts after_left(v + 1, std::vector<double>(2 * v + 1, 0.0));
  Counts before_right(v, std::vector<double>(v + 1, 0.0));
  // A gap that receives several tokens is filled one token per step, middle
  // token first, so every event matches what one generation stage can do.
  auto fill = [&](auto&& self, std::size_t left, std::size_t right, std::span<const TokenId> span) -> void {
    if (span.empty()) return;
    const std::size_t mid = (span.size() - 1) / 2;
    const std::size_t w = index_of(span[mid]);
    ++after_left[left][w];
    ++before_right[w][right];
    self(self, left, w, span.first(mid));
    self(self, w, right, span.subspan(mid + 1));
  };
  for (const auto& pair : pairs) {
    const TokenSeq coarse = model.vocab_.encode(pair.coarse);
    const TokenSeq fine = model.vocab_.encode(pair.fine);
    const bool identity = coarse == fine;
    // Leftmost alignment of coarse into fine.
    std::size_t left = boundary;
    std::size_t c = 0;
    std::size_t gap_start = 0;
    auto close_gap = [&](std::size_t right, std::size_t gap_end) {
      const std::span<const TokenId> inserted(fine.data() + gap_start, gap_end - gap_start);
      if (inserted.empty()) {
        // Only a finished sentence says a gap stays empty; in a partial
        // level the gap may still be filled by a later pair.
        if (identity) ++after_left[left][v + right];
      } else {
        fill(fill, left, right, inserted);
      }
    };
    for (std::size_t f = 0; f < fine.size(); ++f) {
      if (c < coarse.size() && coarse[c] == fine[f]) {
        close_gap(index_of(fine[f]), f);
        left = index_of(fine[f]);
        gap_start = f + 1;
        ++c;
      }
    }
    if (c != coarse.size()) throw DataError("stage pair coarse side is not a subsequence of its fine side");
    close_gap(boundary, fine.size());
  }

  const std::vector<double> left_rows = normalize_rows(after_left, 2 * v + 1, smoothing);
  model.insert_.assign((v + 1) * v, 0.0);
  model.stay_.assign((v + 1) * (v + 1), 0.0);
  for (std::size_t l = 0; l <= v; ++l) {
    const double* row = left_rows.data() + l * (2 * v + 1);
    std::copy(row, row + v, model.insert_.begin() + static_cast<std::ptrdiff_t>(l * v));
    std::copy(row + v, row + 2 * v + 1, model.stay_.begin() + static_cast<std::ptrdiff_t>(l * (v + 1)));
  }
  const std::vector<double> right_rows = normalize_rows(before_right, v + 1, smoothing);
  model.precede_.assign((v + 1) * v, 0.0);
  for (std::size_t w = 0; w < v; ++w) {
    for (std::size_t r = 0; r <= v; ++r) model.precede_[r * v + w] = right_rows[w * (v + 1) + r];
  }
  return model;
}

double BigramInsertionModel::insert_prob(std::optional<TokenId> left, TokenId token) const {
  const std::size_t v = vocab_.size();
  vocab_.check(std::span(&token, 1));
  return insert_[(left ? index_of(*left) : v) * v + index_of(token)];
}

double BigramInsertionModel::stay_prob(std::optional<TokenId> left, std::optional<TokenId> right) const {
  const std::size_t v = vocab_.size();
  return stay_[(left ? index_of(*left) : v) * (v + 1) + (right ? index_of(*right) : v)];
}

double BigramInsertionModel::precede_prob(TokenId token, std::optional<TokenId> right) const {
  const std::size_t v = vocab_.size();
  vocab_.check(std::span(&token, 1));
  return precede_[(right ? index_of(*right) : v) * v + index_of(token)];
}

std::vector<GapDistribution> BigramInsertionModel::predict(TokenSpan /*context*/, TokenSpan tokens) const {
  vocab_.check(tokens);
  const std::size_t v = vocab_.size();
  std::vector<GapDistribution> gaps;
  gaps.reserve(tokens.size() + 1);
  std::vector<double> scores(v);
  for (std::size_t g = 0; g <= tokens.size(); ++g) {
    const std::size_t l = g == 0 ? v : index_of(tokens[g - 1]);
    const std::size_t r = g == tokens.size() ? v : index_of(tokens[g]);
    const std::span<const double> after_left(insert_.data() + l * v, v);
    const std::span<const double> before_right(precede_.data() + r * v, v);
    kernels::multiply(after_left, before_right, scores);
    const double stay = stay_[l * (v + 1) + r];
    const double total = kernels::sum(scores) + stay;

    GapDistribution gap;
    if (total > 0.0) {
      kernels::scale(1.0 / total, scores);
      gap.insert = SparseDist::from_dense(scores);
      gap.no_insert = stay / total;
    } else {
      gap.insert = SparseDist(std::vector<DistEntry>{}, v);
      gap.no_insert = 1.0;
    }
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

}  // namespace holo
