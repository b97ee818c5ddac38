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

#include "holo/chain/chain_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace holo {
namespace {

struct Node {
  std::size_t slot;    // support position
  TokenId id;
  double log_marginal;
};

class ChainSearch {
 public:
  ChainSearch(const KeywordSet& keywords, const MarkovEstimate& est, const ChainOptions& options)
      : est_(est), options_(options) {
    log_threshold_ = options.threshold > 0.0 ? std::log(options.threshold)
                                             : -std::numeric_limits<double>::infinity();
    for (const auto& kw : keywords.keywords) {
      const auto slot = est.support().position(kw.id);
      if (!slot) throw std::invalid_argument("keyword outside the Markov support");
      nodes_.push_back({*slot, kw.id, safe_log(kw.marginal)});
    }
    used_.assign(nodes_.size(), false);
  }

  std::vector<KeywordChain> run() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      used_[i] = true;
      path_.push_back(i);
      extend(safe_log(est_.pi0()[nodes_[i].slot]));
      path_.pop_back();
      used_[i] = false;
    }
    std::sort(out_.begin(), out_.end(), chain_order);
    return std::move(out_);
  }

 private:
  void extend(double log_score) {
    bool extended = false;
    if (path_.size() < options_.max_length) {
      const std::size_t last = nodes_[path_.back()].slot;
      std::vector<std::pair<double, std::size_t>> next;  // (transition, node)
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (used_[j]) continue;
        const double m = est_.transition(nodes_[j].slot, last);
        if (m > 0.0) next.emplace_back(m, j);
      }
      std::sort(next.begin(), next.end(), [this](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return nodes_[a.second].id < nodes_[b.second].id;
      });
      if (next.size() > options_.beam_k) next.resize(options_.beam_k);
      for (const auto& [m, j] : next) {
        const double child = log_score + nodes_[j].log_marginal + std::log(m);
        if (child < log_threshold_) continue;
        extended = true;
        used_[j] = true;
        path_.push_back(j);
        extend(child);
        path_.pop_back();
        used_[j] = false;
      }
    }
    if (!extended) emit(log_score);
  }

  void emit(double log_score) {
    KeywordChain chain;
    for (std::size_t i : path_) chain.tokens.push_back(nodes_[i].id);
    chain.log_score = log_score;
    chain.score = std::exp(log_score);
    out_.push_back(std::move(chain));
  }

  const MarkovEstimate& est_;
  const ChainOptions& options_;
  double log_threshold_;
  std::vector<Node> nodes_;
  std::vector<bool> used_;
  std::vector<std::size_t> path_;
  std::vector<KeywordChain> out_;
};

}  // namespace

bool chain_order(const KeywordChain& a, const KeywordChain& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

std::vector<KeywordChain> build_chains(const KeywordSet& keywords, const MarkovEstimate& est,
                                       const ChainOptions& options) {
  if (keywords.empty()) throw std::invalid_argument("build_chains needs at least one keyword");
  if (options.max_length < 1) throw std::invalid_argument("maximum chain length must be at least 1");
  if (options.beam_k < 1) throw std::invalid_argument("beam_k must be at least 1");
  if (!(options.threshold >= 0.0 && options.threshold < 1.0)) {
    throw std::invalid_argument("chain threshold must lie in [0, 1)");
  }
  // Worst-case number of emitted chains.
  double bound = static_cast<double>(keywords.size());
  for (std::size_t depth = 1; depth < options.max_length && depth < keywords.size(); ++depth) {
    bound *= static_cast<double>(std::min(options.beam_k, keywords.size() - depth));
  }
  if (bound > options.max_expansions) {
    throw std::invalid_argument("chain search too large; lower beam_k or the maximum length");
  }
  return ChainSearch(keywords, est, options).run();
}

double chain_log_probability(std::span<const TokenId> chain, const MarkovEstimate& est, const SparseDist& marginal) {
  if (chain.empty()) throw std::invalid_argument("empty keyword chain");
  std::vector<std::size_t> slots;
  for (TokenId id : chain) {
    const auto slot = est.support().position(id);
    if (!slot) throw std::invalid_argument("chain token outside the Markov support");
    slots.push_back(*slot);
  }
  double total = safe_log(est.pi0()[slots[0]]);
  if (total == kLogZero) return kLogZero;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const double w = marginal.prob(chain[i]);
    const double m = est.transition(slots[i], slots[i - 1]);
    if (!(w > 0.0 && m > 0.0)) return kLogZero;
    total += std::log(w) + std::log(m);
  }
  return total;
}

double chain_probability(std::span<const TokenId> chain, const MarkovEstimate& est, const SparseDist& marginal) {
  const double lp = chain_log_probability(chain, est, marginal);
  return lp == kLogZero ? 0.0 : std::exp(lp);
}

std::vector<KeywordChain> pick_top_z(std::vector<KeywordChain> chains, std::size_t z) {
  if (z < 1) throw std::invalid_argument("Z must be at least 1");
  std::sort(chains.begin(), chains.end(), chain_order);
  if (chains.size() > z) chains.resize(z);
  return chains;
}

nlohmann::json to_json(const KeywordChain& chain, const Vocabulary& vocab) {
  return {{"tokens", vocab.decode(chain.tokens)}, {"score", chain.score}};
}

KeywordChain chain_from_json(const nlohmann::json& j, const Vocabulary& vocab) {
  try {
    KeywordChain chain;
    chain.tokens = vocab.encode(j.at("tokens").get<std::vector<std::string>>());
    chain.score = j.at("score").get<double>();
    if (chain.tokens.empty() || !(chain.score > 0.0 && chain.score <= 1.0)) {
      throw DataError("keyword chain needs tokens and a score in (0, 1]");
    }
    chain.log_score = std::log(chain.score);
    return chain;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed keyword chain: ") + e.what());
  }
}

}  // namespace holo
