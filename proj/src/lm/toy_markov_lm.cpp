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

#include "holo/lm/toy_markov_lm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace holo {
namespace {

void check_stochastic(std::span<const double> v, const std::string& what) {
  double total = 0.0;
  for (double p : v) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + " has an entry outside [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > ToyMarkovLM::kTolerance) {
    throw std::invalid_argument(what + " does not sum to 1");
  }
}

}  // namespace

ToyMarkovLM::ToyMarkovLM(Vocabulary vocab, std::vector<double> pi, std::vector<double> trans,
                         std::string context_tag)
    : vocab_(std::move(vocab)), pi_(std::move(pi)), trans_(std::move(trans)), tag_(std::move(context_tag)) {
  const std::size_t n = vocab_.size();
  if (n == 0) throw std::invalid_argument("toy Markov model needs a non-empty vocabulary");
  if (pi_.size() != n || trans_.size() != n * n) {
    throw std::invalid_argument("toy Markov model dimensions do not match the vocabulary");
  }
  check_stochastic(pi_, "pi");
  initial_ = SparseDist::from_dense(pi_);
  columns_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::span<const double> col(trans_.data() + k * n, n);
    check_stochastic(col, "transition column '" + vocab_.token(token_id(k)) + "'");
    columns_.push_back(SparseDist::from_dense(col));
  }
}

SparseDist ToyMarkovLM::next_token_dist(TokenSpan context, TokenSpan prefix) const {
  vocab_.check(context);
  vocab_.check(prefix);
  if (prefix.empty()) return initial_;
  return columns_[index_of(prefix.back())];
}

nlohmann::json ToyMarkovLM::to_json() const {
  const std::size_t n = vocab_.size();
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t k = 0; k < n; ++k) {
    cols.push_back(std::vector<double>(trans_.begin() + static_cast<std::ptrdiff_t>(k * n),
                                       trans_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)));
  }
  return {{"tokens", vocab_.tokens()}, {"pi", pi_}, {"trans", cols}, {"context_tag", tag_}};
}

ToyMarkovLM ToyMarkovLM::from_json(const nlohmann::json& j) {
  try {
    Vocabulary vocab(j.at("tokens").get<std::vector<std::string>>());
    auto pi = j.at("pi").get<std::vector<double>>();
    std::vector<double> trans;
    for (const auto& col : j.at("trans")) {
      auto c = col.get<std::vector<double>>();
      if (c.size() != vocab.size()) throw DataError("transition column has the wrong length");
      trans.insert(trans.end(), c.begin(), c.end());
    }
    std::string tag = j.value("context_tag", std::string("toy"));
    return ToyMarkovLM(std::move(vocab), std::move(pi), std::move(trans), std::move(tag));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed toy Markov model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid toy Markov model: ") + e.what());
  }
}

ToyMarkovLM ToyMarkovLM::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open toy Markov model " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace holo
