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

#include "holo/insertion/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holo {

Hypothesis stage_step(const InsertionModel& model, TokenSpan context, const Hypothesis& hyp, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in [0, 1)");
  const TokenSeq ids = hyp.ids();
  const auto gaps = model.predict(context, ids);
  if (gaps.size() != ids.size() + 1) {
    throw std::runtime_error("insertion model returned " + std::to_string(gaps.size()) + " gaps for " +
                             std::to_string(ids.size()) + " tokens");
  }

  Hypothesis next;
  next.stage_index = hyp.stage_index + 1;
  auto visit_gap = [&](const GapDistribution& gap) {
    // Highest-probability token, lowest id on ties; inserting nothing wins
    // exact ties.
    const DistEntry* best = nullptr;
    for (const auto& e : gap.insert.entries()) {
      if (best == nullptr || e.prob > best->prob) best = &e;
    }
    if (best == nullptr || best->prob <= gap.no_insert) return;
    const HypToken inserted{best->id, best->prob, false, next.stage_index};
    if (best->prob < tau) {
      next.eliminated.push_back(inserted);
    } else {
      next.tokens.push_back(inserted);
    }
  };
  for (std::size_t g = 0; g < hyp.tokens.size(); ++g) {
    visit_gap(gaps[g]);
    const HypToken& kept = hyp.tokens[g];
    if (!kept.is_protected && kept.confidence < tau) {
      next.eliminated.push_back(kept);
    } else {
      next.tokens.push_back(kept);
    }
  }
  visit_gap(gaps.back());
  return next;
}

StageSequence generate_constrained(const InsertionModel& model, TokenSpan context, const KeywordChain& chain,
                                   double tau, int max_stages) {
  if (chain.tokens.empty()) throw std::invalid_argument("keyword chain is empty");
  if (max_stages < 1) throw std::invalid_argument("max_stages must be at least 1");
  model.vocabulary().check(chain.tokens);

  StageSequence seq;
  seq.chain_log_score = chain.log_score;
  seq.stages.push_back(initial_hypothesis(chain.tokens));
  for (int k = 0; k < max_stages; ++k) {
    Hypothesis next = stage_step(model, context, seq.stages.back(), tau);
    const bool same = next.ids() == seq.stages.back().ids();
    seq.stages.push_back(std::move(next));
    if (same) {
      seq.converged = true;
      break;
    }
  }
  return seq;
}

double joint_stage_logprob(const StageSequence& seq) {
  double total = seq.chain_log_score;
  for (std::size_t k = 1; k < seq.stages.size(); ++k) {
    for (const auto& t : seq.stages[k].tokens) {
      if (t.inserted_at == static_cast<int>(k)) total += std::log(t.confidence);
    }
  }
  return total;
}

nlohmann::json trace_to_json(const StageSequence& seq, const Vocabulary& vocab) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& h : seq.stages) {
    nlohmann::json tokens = nlohmann::json::array();
    for (const auto& t : h.tokens) {
      tokens.push_back({{"token", vocab.token(t.id)},
                        {"confidence", t.confidence},
                        {"protected", t.is_protected},
                        {"stage", t.inserted_at}});
    }
    nlohmann::json eliminated = nlohmann::json::array();
    for (const auto& t : h.eliminated) {
      eliminated.push_back({{"token", vocab.token(t.id)}, {"confidence", t.confidence}});
    }
    stages.push_back({{"stage", h.stage_index}, {"tokens", tokens}, {"eliminated", eliminated}});
  }
  return {{"converged", seq.converged},
          {"chain_log_score", seq.chain_log_score},
          {"joint_logprob", joint_stage_logprob(seq)},
          {"stages", stages}};
}

}  // namespace holo
