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

// holo: command-line front end. Every subcommand writes JSON (or JSONL) to
// stdout; tables go to files via --report. Exit status: 0 success, 1 usage
// error, 2 data or backend error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holo/extract/cover_rate.hpp"
#include "holo/extract/markov_estimate.hpp"
#include "holo/eval/geval.hpp"
#include "holo/kernels/kernels.hpp"
#include "holo/lm/ngram_lm.hpp"
#include "holo/parallel.hpp"
#include "holo/pipeline/alloc_tracker.hpp"
#include "holo/pipeline/bench.hpp"
#include "holo/pipeline/evaluate.hpp"
#include "holo/pipeline/pipeline.hpp"

namespace {

using nlohmann::json;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct ConfigArgs {
  std::string path;
  std::vector<std::string> overrides;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", path, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", overrides, "Override a config key, key=value (repeatable)");
  }
  holo::PipelineConfig load() const { return holo::load_config(path, overrides); }
};

void print(const json& j) { std::cout << j.dump() << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw holo::DataError("cannot write " + path);
  out << text;
}

holo::TokenSeq encode_context(const holo::PipelineResources& r, const std::string& text) {
  return r.lm->vocabulary().encode(r.tokenizer.tokenize(text));
}

// ---- train-lm -------------------------------------------------------------

struct TrainLm {
  std::string corpus, output;
  int order = 3;
  double smoothing = 0.0;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train-lm", "Train an n-gram backend on a whitespace-tokenized corpus");
    cmd->add_option("--corpus", corpus, "One sentence per line")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", output, "Model file to write")->required();
    cmd->add_option("--order", order, "n-gram order")->check(CLI::Range(2, 10))->capture_default_str();
    cmd->add_option("--smoothing", smoothing, "Add-k constant")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto sentences = holo::read_corpus_file(corpus, holo::WhitespaceTokenizer());
    const auto lm = holo::NgramLM::train(sentences, order, smoothing);
    lm.save_file(output);
    print({{"output", output}, {"sentences", sentences.size()}, {"vocab_size", lm.vocabulary().size()},
           {"order", order}, {"smoothing", smoothing}});
  }
};

// ---- extract / chains / inspect -------------------------------------------

holo::MarkovEstimate estimate_for(const holo::PipelineConfig& c, const holo::PipelineResources& r,
                                  const std::string& context) {
  const auto ids = encode_context(r, context);
  const auto raw = holo::build_markov(*r.lm, ids, c.p, {c.temperature, c.workers});
  return holo::propagate(raw, c.effective_steps(), {c.renormalize});
}

struct Extract {
  ConfigArgs config;
  std::string context;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("extract", "Extract target-side keywords for a context");
    config.add_to(cmd);
    cmd->add_option("--context", context, "Context text")->required();
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    auto one = c;
    one.chains = 1;
    const auto res = holo::run_pipeline(one, r, context, {c.workers});
    const auto est = estimate_for(c, r, context);
    const auto& vocab = r.lm->vocabulary();
    json support = json::array();
    for (auto id : est.support().tokens) support.push_back(vocab.token(id));
    print({{"context", context},
           {"support", support},
           {"support_size", est.size()},
           {"keywords", holo::to_json(res.keywords, vocab)},
           {"base_model_calls", res.counters.base_model_calls}});
  }
};

struct Chains {
  ConfigArgs config;
  std::string context;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("chains", "Build and score keyword chains for a context");
    config.add_to(cmd);
    cmd->add_option("--context", context, "Context text")->required();
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    const auto res = holo::run_pipeline(c, r, context, {c.workers});
    const auto& vocab = r.lm->vocabulary();
    json chains = json::array();
    for (const auto& ch : res.chains) chains.push_back(holo::to_json(ch, vocab));
    print({{"context", context},
           {"keywords", holo::to_json(res.keywords, vocab)},
           {"chains_built", res.counters.chains_built},
           {"chains", chains}});
  }
};

struct Inspect {
  ConfigArgs config;
  std::string context;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("inspect", "Show the resolved config, kernels, and optionally the Markov estimate");
    config.add_to(cmd);
    cmd->add_option("--context", context, "Also dump the Markov estimate for this context");
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    json out = {{"config", holo::to_json(c)}, {"kernels", std::string(holo::kernels::isa_name(holo::kernels::active_isa()))}};
    const auto r = holo::load_resources(c);
    out["lm_vocab_size"] = r.lm->vocabulary().size();
    out["insertion_vocab_size"] = r.insertion->vocabulary().size();
    if (!context.empty()) {
      const auto est = estimate_for(c, r, context);
      out["estimate"] = holo::to_debug_json(est, r.lm->vocabulary());
      json marginal = json::array();
      for (const auto& e : holo::word_marginal(est).ranked()) {
        marginal.push_back({{"token", r.lm->vocabulary().token(e.id)}, {"prob", e.prob}});
      }
      out["word_marginal"] = marginal;
    }
    print(out);
  }
};

// ---- generate --------------------------------------------------------------

struct Generate {
  ConfigArgs config;
  std::string chain;
  std::string context;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("generate", "Run constrained insertion from a given keyword chain");
    config.add_to(cmd);
    cmd->add_option("--chain", chain, "Space-separated keywords, in order")->required();
    cmd->add_option("--context", context, "Context text passed to the insertion model");
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    const auto& vocab = r.insertion->vocabulary();
    holo::KeywordChain seed;
    seed.tokens = vocab.encode(r.tokenizer.tokenize(chain));
    // A hand-written chain carries no probability; log p(Y^0) is taken as 0.
    seed.score = 1.0;
    seed.log_score = 0.0;
    const auto ctx = encode_context(r, context);
    const auto seq = holo::generate_constrained(*r.insertion, ctx, seed, c.tau, c.max_stages);
    const auto words = vocab.decode(seq.final_hypothesis().ids());
    print({{"chain", r.tokenizer.tokenize(chain)},
           {"text", holo::join_tokens(words, c.separator)},
           {"trace", holo::trace_to_json(seq, vocab)}});
  }
};

// ---- pipeline --------------------------------------------------------------

struct Pipeline {
  ConfigArgs config;
  std::string input, output, context;
  bool traces = false, timings = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("pipeline", "Run the full pipeline on a context or a JSONL dataset");
    config.add_to(cmd);
    auto* in = cmd->add_option("--input", input, "JSONL rows with a \"context\" field")->check(CLI::ExistingFile);
    auto* ctx = cmd->add_option("--context", context, "Single context text");
    in->excludes(ctx);
    cmd->add_option("--output", output, "JSONL output file (default: stdout)");
    cmd->add_flag("--traces", traces, "Include per-candidate stage traces");
    cmd->add_flag("--timings", timings, "Include per-phase wall times");
    cmd->callback([this] {
      if (input.empty() && context.empty()) throw CLI::ValidationError("pipeline", "need --input or --context");
      run();
    });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    const holo::ResultJsonOptions opts{traces, timings};
    const auto& vocab = r.insertion->vocabulary();

    holo::Dataset data;
    if (!input.empty()) {
      data = holo::read_dataset_file(input);
    } else {
      data.rows.push_back({1, context, std::nullopt});
    }
    std::vector<std::pair<std::size_t, std::string>> lines(data.rows.size());
    // Samples fan out across workers; each sample then runs single-threaded.
    const std::size_t inner = data.rows.size() > 1 ? 1 : c.workers;
    holo::parallel_for(data.rows.size(), c.workers, [&](std::size_t i) {
      const auto& row = data.rows[i];
      json j;
      try {
        j = holo::to_json(holo::run_pipeline(c, r, row.context, {inner}), vocab, opts);
      } catch (const holo::PhaseError& e) {
        j = {{"line", row.line}, {"error", e.what()}};
      }
      lines[i] = {row.line, j.dump()};
    });
    for (const auto& e : data.errors) lines.emplace_back(e.line, holo::to_json(e).dump());
    std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::ofstream file;
    if (!output.empty()) {
      file.open(output, std::ios::binary);
      if (!file) throw holo::DataError("cannot write " + output);
    }
    std::ostream& out = output.empty() ? std::cout : file;
    for (const auto& [line, text] : lines) out << text << '\n';
  }
};

// ---- bench / eval / cover-rate ----------------------------------------------

struct Bench {
  ConfigArgs config;
  std::string input, output;
  bool no_timing = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "Count base-model calls and time the pipeline per sample");
    config.add_to(cmd);
    cmd->add_option("--input", input, "JSONL rows with context and reference")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output", output, "Also write the report to this file");
    cmd->add_flag("--no-timing", no_timing, "Report zero wall time and memory (reproducible output)");
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    holo::BenchOptions opts;
    opts.record_timing = !no_timing;
    opts.reset_peak = holo::alloc::reset_peak;
    opts.peak_bytes = holo::alloc::peak_bytes;
    const auto text = holo::to_json(holo::bench(c, r, holo::read_dataset_file(input), opts)).dump(2) + "\n";
    if (!output.empty()) write_text(output, text);
    std::cout << text;
  }
};

struct Eval {
  ConfigArgs config;
  std::string input, report;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("eval", "Text metrics with mask-predict on and off");
    config.add_to(cmd);
    cmd->add_option("--input", input, "JSONL rows with context and reference")->required()->check(CLI::ExistingFile);
    cmd->add_option("--report", report, "Write the fixed-width metrics table here");
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto r = holo::load_resources(c);
    const auto ablation = holo::mask_predict_ablation(c, r, holo::read_dataset_file(input));
    if (!report.empty()) write_text(report, holo::format_ablation_table(ablation));
    print(holo::to_json(ablation));
  }
};

struct CoverRate {
  ConfigArgs config;
  std::string input;
  double top_fraction = holo::kDefaultCoverTopFraction;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("cover-rate", "Share of reference keywords in the top of the first-step distribution");
    config.add_to(cmd);
    cmd->add_option("--input", input, "JSONL rows with context and reference")->required()->check(CLI::ExistingFile);
    cmd->add_option("--top-fraction", top_fraction, "Fraction of the vocabulary counted as top")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }
  void run() const {
    const auto c = config.load();
    const auto lm = holo::load_language_model(c);
    const holo::WhitespaceTokenizer tok;
    const auto data = holo::read_dataset_file(input, /*require_reference=*/true);
    std::vector<holo::CoverSample> samples;
    json errors = json::array();
    for (const auto& e : data.errors) errors.push_back(holo::to_json(e));
    for (const auto& row : data.rows) {
      try {
        samples.push_back({lm->vocabulary().encode(tok.tokenize(row.context)), tok.tokenize(*row.reference)});
      } catch (const holo::UnknownTokenError& e) {
        errors.push_back(holo::to_json(holo::RowError{row.line, e.what()}));
      }
    }
    const holo::ContentWordExtractor extractor(holo::load_stopwords(c));
    json out = holo::to_json(holo::cover_rate(*lm, samples, extractor, top_fraction));
    out["errors"] = errors;
    print(out);
  }
};

// ---- geval-prompt ----------------------------------------------------------

struct GevalPrompt {
  std::string aspect, history, response, output;
  bool score = false;
  holo::GEvalEndpoint endpoint;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("geval-prompt", "Render an LLM evaluation prompt, optionally score it");
    cmd->add_option("--aspect", aspect, "informativeness, coherence or humanness")->required();
    cmd->add_option("--history", history, "Dialogue history text")->required();
    cmd->add_option("--response", response, "Response text")->required();
    cmd->add_option("--output", output, "Also write the raw prompt to this file");
    cmd->add_flag("--score", score, "Send the prompt to the endpoint (uses HOLO_LLM_TOKEN)");
    cmd->add_option("--endpoint", endpoint.base_url, "Chat-completion base URL");
    cmd->add_option("--model", endpoint.model, "Model name sent to the endpoint");
    cmd->callback([this] { run(); });
  }
  void run() {
    const auto a = holo::parse_aspect(aspect);
    const auto prompt = holo::render_geval_prompt(a, history, response);
    if (!output.empty()) write_text(output, prompt);
    json out = {{"aspect", std::string(holo::aspect_name(a))}, {"prompt", prompt}};
    if (score) {
      if (endpoint.base_url.empty()) throw CLI::ValidationError("--score", "needs --endpoint");
      endpoint.enabled = true;
      out["score"] = holo::geval_score(endpoint, prompt);
    }
    print(out);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holo: keyword-chain extraction and constrained insertion generation"};
  app.require_subcommand(1);
  TrainLm train_lm;
  Extract extract;
  Chains chains;
  Generate generate;
  Pipeline pipeline;
  Bench bench;
  Eval eval;
  CoverRate cover;
  Inspect inspect;
  GevalPrompt geval;
  train_lm.add(app);
  extract.add(app);
  chains.add(app);
  generate.add(app);
  pipeline.add(app);
  bench.add(app);
  eval.add(app);
  cover.add(app);
  inspect.add(app);
  geval.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e, std::cerr, std::cerr);
    return kUsageError;
  } catch (const holo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
