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

#include "holo/pipeline/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include "holo/common.hpp"

namespace holo {
namespace {

using Field = std::function<void(PipelineConfig&, const nlohmann::json&, const std::filesystem::path&)>;

std::filesystem::path resolve(const nlohmann::json& v, const std::filesystem::path& base) {
  std::filesystem::path path = v.get<std::string>();
  if (path.empty() || path.is_absolute() || base.empty()) return path;
  return base / path;
}

Backend parse_backend(const std::string& name) {
  if (name == "ngram") return Backend::kNgram;
  if (name == "toy") return Backend::kToy;
  if (name == "remote") return Backend::kRemote;
  throw DataError("unknown backend '" + name + "' (expected ngram, toy or remote)");
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::kNgram: return "ngram";
    case Backend::kToy: return "toy";
    case Backend::kRemote: return "remote";
  }
  return "";
}

InsertionTraining parse_training(const std::string& name) {
  if (name == "sentences") return InsertionTraining::kSentences;
  if (name == "stages") return InsertionTraining::kStages;
  throw DataError("unknown insertion_training '" + name + "' (expected sentences or stages)");
}

std::string training_name(InsertionTraining t) {
  return t == InsertionTraining::kStages ? "stages" : "sentences";
}

template <typename T, typename Member>
Field plain(Member member) {
  return [member](PipelineConfig& c, const nlohmann::json& v, const std::filesystem::path&) {
    c.*member = v.get<T>();
  };
}

template <typename Member>
Field path_field(Member member) {
  return [member](PipelineConfig& c, const nlohmann::json& v, const std::filesystem::path& base) {
    c.*member = resolve(v, base);
  };
}

const std::map<std::string, Field, std::less<>>& fields() {
  using C = PipelineConfig;
  static const std::map<std::string, Field, std::less<>> table = {
      {"p", plain<double>(&C::p)},
      {"T", plain<int>(&C::steps)},
      {"k", plain<std::size_t>(&C::keywords)},
      {"L", plain<std::size_t>(&C::max_chain_length)},
      {"Z", plain<std::size_t>(&C::chains)},
      {"beam_k", plain<std::size_t>(&C::beam_k)},
      {"chain_threshold", plain<double>(&C::chain_threshold)},
      {"tau", plain<double>(&C::tau)},
      {"max_stages", plain<int>(&C::max_stages)},
      {"temperature", plain<double>(&C::temperature)},
      {"renormalize", plain<bool>(&C::renormalize)},
      {"backend",
       [](C& c, const nlohmann::json& v, const std::filesystem::path&) {
         c.backend = parse_backend(v.get<std::string>());
       }},
      {"lm_path", path_field(&C::lm_path)},
      {"vocab_path", path_field(&C::vocab_path)},
      {"remote_url", plain<std::string>(&C::remote_url)},
      {"remote_top_n", plain<int>(&C::remote_top_n)},
      {"insertion_corpus", path_field(&C::insertion_corpus)},
      {"insertion_smoothing", plain<double>(&C::insertion_smoothing)},
      {"insertion_training",
       [](C& c, const nlohmann::json& v, const std::filesystem::path&) {
         c.insertion_training = parse_training(v.get<std::string>());
       }},
      {"decompose_stages", plain<int>(&C::decompose_stages)},
      {"lexicon", path_field(&C::lexicon)},
      {"stopwords", path_field(&C::stopwords)},
      {"filter_stopwords", plain<bool>(&C::filter_stopwords)},
      {"ranker_length_weight", plain<double>(&C::ranker_length_weight)},
      {"ranker_preferred_length", plain<double>(&C::ranker_preferred_length)},
      {"separator", plain<std::string>(&C::separator)},
      {"workers", plain<std::size_t>(&C::workers)},
  };
  return table;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + what);
}

}  // namespace

void PipelineConfig::validate() const {
  require(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
  require(steps >= 0 && steps <= kMaxSteps, "T must lie in [0, 100000] (0 means L)");
  require(keywords >= 1, "k must be at least 1");
  require(max_chain_length >= 1, "L must be at least 1");
  require(chains >= 1, "Z must be at least 1");
  require(beam_k >= 1, "beam_k must be at least 1");
  require(chain_threshold >= 0.0 && chain_threshold < 1.0, "chain_threshold must lie in [0, 1)");
  require(tau >= 0.0 && tau < 1.0, "tau must lie in [0, 1)");
  require(max_stages >= 1, "max_stages must be at least 1");
  require(temperature > 0.0, "temperature must be positive");
  require(remote_top_n >= 1, "remote_top_n must be positive");
  require(insertion_smoothing >= 0.0, "insertion_smoothing must be non-negative");
  require(decompose_stages >= 1, "decompose_stages must be at least 1");
  require(ranker_length_weight >= 0.0 && ranker_length_weight <= 1.0, "ranker_length_weight must lie in [0, 1]");
  require(ranker_preferred_length > 0.0, "ranker_preferred_length must be positive");
  require(workers >= 1, "workers must be at least 1");
  require(!lm_path.empty() || backend == Backend::kRemote, "lm_path is required for local backends");
  require(backend != Backend::kRemote || (!remote_url.empty() && !vocab_path.empty()),
          "remote backend needs remote_url and vocab_path");
  require(!insertion_corpus.empty(), "insertion_corpus is required");
}

PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw DataError("config must be a JSON object");
  PipelineConfig config;
  for (const auto& [key, value] : j.items()) {
    const auto it = fields().find(key);
    if (it == fields().end()) throw DataError("unknown config key '" + key + "'");
    try {
      it->second(config, value, base_dir);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("config key '" + key + "': " + e.what());
    }
  }
  return config;
}

nlohmann::json to_json(const PipelineConfig& c) {
  return {{"p", c.p},
          {"T", c.steps},
          {"k", c.keywords},
          {"L", c.max_chain_length},
          {"Z", c.chains},
          {"beam_k", c.beam_k},
          {"chain_threshold", c.chain_threshold},
          {"tau", c.tau},
          {"max_stages", c.max_stages},
          {"temperature", c.temperature},
          {"renormalize", c.renormalize},
          {"backend", backend_name(c.backend)},
          {"lm_path", c.lm_path.string()},
          {"vocab_path", c.vocab_path.string()},
          {"remote_url", c.remote_url},
          {"remote_top_n", c.remote_top_n},
          {"insertion_corpus", c.insertion_corpus.string()},
          {"insertion_smoothing", c.insertion_smoothing},
          {"insertion_training", training_name(c.insertion_training)},
          {"decompose_stages", c.decompose_stages},
          {"lexicon", c.lexicon.string()},
          {"stopwords", c.stopwords.string()},
          {"filter_stopwords", c.filter_stopwords},
          {"ranker_length_weight", c.ranker_length_weight},
          {"ranker_preferred_length", c.ranker_preferred_length},
          {"separator", c.separator},
          {"workers", c.workers}};
}

void apply_override(nlohmann::json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw std::invalid_argument("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  auto value = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  config[key] = value.is_discarded() ? nlohmann::json(text) : std::move(value);
}

PipelineConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  PipelineConfig config = config_from_json(j, path.parent_path());
  config.validate();
  return config;
}

}  // namespace holo
