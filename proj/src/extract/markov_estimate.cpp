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

#include "holo/extract/markov_estimate.hpp"

#include <stdexcept>
#include <string>

#include "holo/kernels/kernels.hpp"
#include "holo/parallel.hpp"

namespace holo {

MarkovEstimate::MarkovEstimate(Support support, std::vector<double> pi0, std::vector<double> transition,
                               std::vector<double> leak, std::size_t vocab_size,
                               std::vector<std::vector<double>> states)
    : support_(std::move(support)),
      pi0_(std::move(pi0)),
      transition_(std::move(transition)),
      leak_(std::move(leak)),
      vocab_size_(vocab_size),
      states_(std::move(states)) {
  const std::size_t n = support_.size();
  if (pi0_.size() != n || leak_.size() != n || transition_.size() != n * n) {
    throw std::invalid_argument("Markov estimate dimensions do not match the support");
  }
  for (const auto& s : states_) {
    if (s.size() != n) throw std::invalid_argument("Markov state has the wrong dimension");
  }
}

MarkovEstimate MarkovEstimate::with_states(std::vector<std::vector<double>> states) const {
  return MarkovEstimate(support_, pi0_, transition_, leak_, vocab_size_, std::move(states));
}

MarkovEstimate build_markov(const LanguageModel& lm, TokenSpan context, double p, const BuildOptions& options) {
  const std::size_t vocab_size = lm.vocabulary().size();
  const SparseDist first = apply_temperature(lm.next_token_dist(context, {}), options.temperature);
  Support support = top_p_support(first, p);
  const std::size_t n = support.size();

  std::vector<double> pi0(n);
  for (std::size_t k = 0; k < n; ++k) pi0[k] = first.prob(support.tokens[k]);

  std::vector<double> transition(n * n, 0.0);
  std::vector<double> leak(n, 0.0);
  parallel_for(n, options.workers, [&](std::size_t k) {
    const TokenId from = support.tokens[k];
    SparseDist column;
    try {
      column = apply_temperature(lm.next_token_dist(context, std::span<const TokenId>(&from, 1)), options.temperature);
    } catch (const std::exception& e) {
      throw BackendError("transition query for support token '" + lm.vocabulary().token(from) +
                         "' failed: " + e.what());
    }
    double kept = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double m = column.prob(support.tokens[j]);
      transition[k * n + j] = m;
      kept += m;
    }
    leak[k] = std::max(0.0, 1.0 - kept);
  });
  return MarkovEstimate(std::move(support), std::move(pi0), std::move(transition), std::move(leak), vocab_size);
}

MarkovEstimate propagate(const MarkovEstimate& est, int steps, const PropagateOptions& options) {
  if (steps < 1) throw std::invalid_argument("propagation needs at least one step");
  if (steps > kMaxPropagationSteps) throw std::invalid_argument("too many propagation steps");
  const std::size_t n = est.size();

  std::vector<std::vector<double>> states;
  states.reserve(static_cast<std::size_t>(steps));
  states.emplace_back(est.pi0().begin(), est.pi0().end());
  for (int t = 1; t < steps; ++t) {
    const auto& cur = states.back();
    std::vector<double> next(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (cur[k] != 0.0) kernels::axpy(cur[k], est.column(k), next);
    }
    if (options.renormalize) {
      const double mass = kernels::sum(next);
      if (mass > 0.0) kernels::scale(1.0 / mass, next);
    }
    states.push_back(std::move(next));
  }
  return est.with_states(std::move(states));
}

SparseDist word_marginal(const MarkovEstimate& est) {
  const auto& states = est.states();
  if (states.empty()) throw std::invalid_argument("word_marginal needs propagated states");
  std::vector<double> avg(est.size(), 0.0);
  for (const auto& s : states) kernels::axpy(1.0, s, avg);
  kernels::scale(1.0 / static_cast<double>(states.size()), avg);

  std::vector<DistEntry> entries;
  for (std::size_t k = 0; k < est.size(); ++k) {
    if (avg[k] > 0.0) entries.push_back({est.support().tokens[k], avg[k]});
  }
  return SparseDist(std::move(entries), est.vocab_size());
}

nlohmann::json to_debug_json(const MarkovEstimate& est, const Vocabulary& vocab) {
  nlohmann::json columns = nlohmann::json::array();
  for (std::size_t k = 0; k < est.size(); ++k) {
    columns.push_back(std::vector<double>(est.column(k).begin(), est.column(k).end()));
  }
  nlohmann::json j;
  j["support"] = vocab.decode(est.support().tokens);
  j["support_mass"] = est.support().cumulative_mass;
  j["support_reached_p"] = est.support().reached;
  j["pi0"] = std::vector<double>(est.pi0().begin(), est.pi0().end());
  j["transition_columns"] = columns;
  j["leak"] = std::vector<double>(est.leak().begin(), est.leak().end());
  if (!est.states().empty()) j["states"] = est.states();
  return j;
}

}  // namespace holo
