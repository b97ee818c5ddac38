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

#include "holo/corpus/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace holo {

TfIdfTable TfIdfTable::build(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("cannot build TF-IDF on an empty corpus");
  TfIdfTable table;
  table.doc_count_ = corpus.size();

  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& sentence : corpus) {
    std::set<std::string_view> seen(sentence.begin(), sentence.end());
    for (auto t : seen) ++df[std::string(t)];
  }
  const double d = static_cast<double>(table.doc_count_);
  for (const auto& [token, n] : df) table.idf_.emplace(token, std::log(d / static_cast<double>(n)));

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& sentence : corpus) {
    for (double s : table.raw_scores(sentence)) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  table.raw_min_ = lo;
  table.raw_max_ = hi;
  return table;
}

double TfIdfTable::max_idf() const { return std::log(static_cast<double>(doc_count_)); }

double TfIdfTable::idf(std::string_view token) const {
  auto it = idf_.find(token);
  return it == idf_.end() ? max_idf() : it->second;
}

std::vector<double> TfIdfTable::raw_scores(std::span<const std::string> sentence) const {
  std::map<std::string_view, std::size_t> tf;
  for (const auto& t : sentence) ++tf[t];
  std::vector<double> out;
  out.reserve(sentence.size());
  const double len = static_cast<double>(sentence.size());
  for (const auto& t : sentence) out.push_back(static_cast<double>(tf[t]) / len * idf(t));
  return out;
}

double TfIdfTable::normalize(double raw) const {
  if (!(raw_max_ > raw_min_)) return kNormMin;
  const double scaled = kNormMin + (kNormMax - kNormMin) * (raw - raw_min_) / (raw_max_ - raw_min_);
  return std::clamp(scaled, kNormMin, kNormMax);
}

std::vector<double> TfIdfTable::normalized_scores(std::span<const std::string> sentence) const {
  auto scores = raw_scores(sentence);
  for (double& s : scores) s = normalize(s);
  return scores;
}

}  // namespace holo
