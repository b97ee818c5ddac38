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

#include "holo/pipeline/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "holo/corpus/tfidf.hpp"
#include "holo/extract/markov_estimate.hpp"
#include "holo/insertion/bigram_insertion_model.hpp"
#include "holo/lm/ngram_lm.hpp"
#include "holo/lm/remote_lm.hpp"
#include "holo/lm/toy_markov_lm.hpp"
#include "holo/parallel.hpp"

namespace holo {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <typename Fn>
auto in_phase(const char* phase, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PhaseError&) {
    throw;
  } catch (const std::exception& e) {
    throw PhaseError(phase, e.what());
  }
}

}  // namespace

std::unique_ptr<LanguageModel> load_language_model(const PipelineConfig& config) {
  switch (config.backend) {
    case Backend::kNgram:
      return std::make_unique<NgramLM>(NgramLM::load_file(config.lm_path));
    case Backend::kToy:
      return std::make_unique<ToyMarkovLM>(ToyMarkovLM::load_file(config.lm_path));
    case Backend::kRemote: {
      RemoteEndpoint endpoint;
      endpoint.base_url = config.remote_url;
      endpoint.top_n = config.remote_top_n;
      return std::make_unique<RemoteLM>(Vocabulary::load_file(config.vocab_path), endpoint);
    }
  }
  throw std::logic_error("unhandled backend");
}

StopwordFilter load_stopwords(const PipelineConfig& config) {
  if (!config.filter_stopwords) return StopwordFilter({}, /*block_punctuation=*/false);
  if (config.stopwords.empty()) return StopwordFilter();
  std::ifstream in(config.stopwords);
  if (!in) throw DataError("cannot open stopword list " + config.stopwords.string());
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() != '#') words.push_back(line);
  }
  return StopwordFilter(std::move(words));
}

std::vector<StagePair> stage_training_pairs(const Corpus& corpus, const PosTagger& tagger, int stages) {
  const TfIdfTable table = TfIdfTable::build(corpus);
  const TopQuartileFlagger flagger;
  std::vector<StagePair> out;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) continue;
    auto pairs = stage_decompose(sentence, importance_scores(sentence, table, tagger, flagger), stages);
    out.insert(out.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
    out.push_back({sentence, sentence});
  }
  return out;
}

PipelineResources load_resources(const PipelineConfig& config) {
  PipelineResources r;
  r.lm = load_language_model(config);
  const Corpus corpus = read_corpus_file(config.insertion_corpus, r.tokenizer);
  if (config.insertion_training == InsertionTraining::kStages) {
    std::unique_ptr<PosTagger> tagger;
    if (config.lexicon.empty()) {
      tagger = std::make_unique<NullTagger>();
    } else {
      tagger = std::make_unique<LexiconTagger>(LexiconTagger::load_file(config.lexicon));
    }
    const auto pairs = stage_training_pairs(corpus, *tagger, config.decompose_stages);
    r.insertion = std::make_unique<BigramInsertionModel>(
        BigramInsertionModel::train_from_pairs(pairs, config.insertion_smoothing, r.lm->vocabulary()));
  } else {
    r.insertion = std::make_unique<BigramInsertionModel>(
        BigramInsertionModel::train(corpus, config.insertion_smoothing, r.lm->vocabulary()));
  }
  r.stopwords = load_stopwords(config);
  r.ranker = std::make_unique<LexicalRanker>(
      LexicalRanker::Options{config.ranker_length_weight, config.ranker_preferred_length}, r.stopwords);
  return r;
}

PipelineResult run_pipeline(const PipelineConfig& config, const PipelineResources& resources,
                            const std::string& context, const RunOptions& options) {
  const LanguageModel& lm = *resources.lm;
  const Vocabulary& vocab = lm.vocabulary();
  PipelineResult result;
  result.context = context;

  const Words context_words = resources.tokenizer.tokenize(context);
  const TokenSeq context_ids = in_phase("tokenize", [&] { return vocab.encode(context_words); });

  auto t0 = Clock::now();
  const CountingLanguageModel counting(lm);
  const MarkovEstimate est = in_phase("extract", [&] {
    const MarkovEstimate raw =
        build_markov(counting, context_ids, config.p, {config.temperature, options.workers});
    return propagate(raw, config.effective_steps(), {config.renormalize});
  });
  const SparseDist marginal = in_phase("extract", [&] { return word_marginal(est); });
  result.keywords = in_phase("extract", [&] {
    return select_keywords(resources.stopwords.apply(marginal, vocab), est.support(), config.keywords);
  });
  result.counters.base_model_calls = counting.calls();
  result.counters.call_depth = 2;
  result.counters.support_size = est.size();
  result.counters.keywords = result.keywords.size();
  result.timings.extract_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const ChainOptions chain_options{config.max_chain_length, config.beam_k, config.chain_threshold};
  std::vector<KeywordChain> built = in_phase("chains", [&] {
    return result.keywords.empty() ? std::vector<KeywordChain>{}
                                   : build_chains(result.keywords, est, chain_options);
  });
  result.counters.chains_built = built.size();
  result.chains = pick_top_z(std::move(built), config.chains);
  result.counters.chains_picked = result.chains.size();
  result.timings.chains_ms = elapsed_ms(t0);

  t0 = Clock::now();
  result.candidates.resize(result.chains.size());
  in_phase("generate", [&] {
    parallel_for(result.chains.size(), options.workers, [&](std::size_t i) {
      Candidate& c = result.candidates[i];
      c.chain = result.chains[i];
      c.trace = generate_constrained(*resources.insertion, context_ids, c.chain, config.tau, config.max_stages);
      c.words = resources.insertion->vocabulary().decode(c.trace.final_hypothesis().ids());
      c.text = join_tokens(c.words, config.separator);
      c.joint_logprob = joint_stage_logprob(c.trace);
    });
  });
  for (const auto& c : result.candidates) result.counters.insertion_stages += c.trace.stages.size() - 1;
  result.timings.generate_ms = elapsed_ms(t0);

  t0 = Clock::now();
  in_phase("rank", [&] {
    if (result.candidates.empty()) return;
    std::vector<Words> texts;
    texts.reserve(result.candidates.size());
    for (const auto& c : result.candidates) texts.push_back(c.words);
    const auto ranked = rank_candidates(*resources.ranker, context_words, texts);
    for (const auto& r : ranked) result.candidates[r.index].rank_score = r.score;
    result.chosen = ranked.front().index;
    result.response = result.candidates[*result.chosen].text;
    result.counters.ranked = ranked.size();
  });
  result.timings.rank_ms = elapsed_ms(t0);
  return result;
}

nlohmann::json to_json(const PipelineResult& result, const Vocabulary& vocab, const ResultJsonOptions& options) {
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& c : result.chains) chains.push_back(to_json(c, vocab));
  nlohmann::json candidates = nlohmann::json::array();
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const Candidate& c = result.candidates[i];
    nlohmann::json j = {{"chain", i},
                        {"text", c.text},
                        {"tokens", c.words},
                        {"stages", c.trace.stages.size() - 1},
                        {"converged", c.trace.converged},
                        {"rank_score", c.rank_score},
                        {"joint_logprob", c.joint_logprob}};
    if (options.traces) j["trace"] = trace_to_json(c.trace, vocab);
    candidates.push_back(std::move(j));
  }
  const PipelineCounters& k = result.counters;
  nlohmann::json out = {
      {"context", result.context},
      {"keywords", to_json(result.keywords, vocab)},
      {"support_size", k.support_size},
      {"chains", chains},
      {"candidates", candidates},
      {"chosen", result.chosen ? nlohmann::json(*result.chosen) : nlohmann::json(nullptr)},
      {"response", result.response},
      {"counters",
       {{"extract", {{"base_model_calls", k.base_model_calls}, {"call_depth", k.call_depth},
                     {"support_size", k.support_size}, {"keywords", k.keywords}}},
        {"chains", {{"built", k.chains_built}, {"picked", k.chains_picked}}},
        {"generate", {{"insertion_stages", k.insertion_stages}}},
        {"rank", {{"ranked", k.ranked}}}}}};
  if (options.timings) {
    const PhaseTimings& t = result.timings;
    out["timings_ms"] = {{"extract", t.extract_ms}, {"chains", t.chains_ms},
                         {"generate", t.generate_ms}, {"rank", t.rank_ms}};
  }
  return out;
}

}  // namespace holo
