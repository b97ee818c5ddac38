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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holo/lm/vocabulary.hpp"

namespace holo {

/// Sentence-level TF-IDF with a linear min-max map onto [1, 1000].
///   tf(t, s) = count(t in s) / |s|,   idf(t) = ln(D / df(t))
/// The normalization range is fixed by the raw scores seen while building;
/// scores of other sentences are clamped into [1, 1000].
class TfIdfTable {
 public:
  static constexpr double kNormMin = 1.0;
  static constexpr double kNormMax = 1000.0;

  /// Throws DataError for an empty corpus.
  static TfIdfTable build(const Corpus& corpus);

  std::size_t doc_count() const { return doc_count_; }
  /// Tokens absent from the corpus get ln(D), the largest possible idf.
  double idf(std::string_view token) const;
  double max_idf() const;

  std::vector<double> raw_scores(std::span<const std::string> sentence) const;
  std::vector<double> normalized_scores(std::span<const std::string> sentence) const;
  /// Degenerate ranges (min == max) map everything to kNormMin.
  double normalize(double raw) const;

  double raw_min() const { return raw_min_; }
  double raw_max() const { return raw_max_; }

 private:
  std::map<std::string, double, std::less<>> idf_;
  std::size_t doc_count_ = 0;
  double raw_min_ = 0.0;
  double raw_max_ = 0.0;
};

}  // namespace holo
