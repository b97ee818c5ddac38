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

#include "holo/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace holo {
namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts ngrams(std::span<const std::string> words, std::size_t n) {
  NgramCounts out;
  if (words.size() < n) return out;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::vector<std::string_view> key(words.begin() + static_cast<std::ptrdiff_t>(i),
                                      words.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++out[key];
  }
  return out;
}

void check_parallel(std::span<const Words> references, std::span<const Words> hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw std::invalid_argument("references and hypotheses differ in length");
  }
  if (references.empty()) throw std::invalid_argument("metrics need at least one sample");
}

std::string cell(double v, int width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%*.2f", width, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

double unigram_f1(std::span<const std::string> reference, std::span<const std::string> hypothesis) {
  if (reference.empty() || hypothesis.empty()) return 0.0;
  const auto r = ngrams(reference, 1);
  const auto h = ngrams(hypothesis, 1);
  std::size_t overlap = 0;
  for (const auto& [g, c] : h) {
    if (auto it = r.find(g); it != r.end()) overlap += std::min(c, it->second);
  }
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(hypothesis.size());
  const double rc = static_cast<double>(overlap) / static_cast<double>(reference.size());
  return 2.0 * p * rc / (p + rc);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(std::span<const std::string> reference, std::span<const std::string> hypothesis, double beta) {
  if (reference.empty() || hypothesis.empty()) return 0.0;
  const double lcs = static_cast<double>(lcs_length(reference, hypothesis));
  if (lcs == 0.0) return 0.0;
  const double recall = lcs / static_cast<double>(reference.size());
  if (std::isinf(beta)) return recall;
  const double precision = lcs / static_cast<double>(hypothesis.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (recall + b2 * precision);
}

double corpus_bleu(std::span<const Words> references, std::span<const Words> hypotheses, int max_order) {
  check_parallel(references, hypotheses);
  if (max_order < 1) throw std::invalid_argument("BLEU order must be at least 1");
  const auto orders = static_cast<std::size_t>(max_order);
  std::vector<double> matches(orders, 0.0), totals(orders, 0.0);
  double ref_len = 0.0, hyp_len = 0.0;
  for (std::size_t s = 0; s < references.size(); ++s) {
    ref_len += static_cast<double>(references[s].size());
    hyp_len += static_cast<double>(hypotheses[s].size());
    for (std::size_t n = 1; n <= orders; ++n) {
      const auto r = ngrams(references[s], n);
      const auto h = ngrams(hypotheses[s], n);
      for (const auto& [g, c] : h) {
        totals[n - 1] += static_cast<double>(c);
        if (auto it = r.find(g); it != r.end()) matches[n - 1] += static_cast<double>(std::min(c, it->second));
      }
    }
  }
  if (hyp_len == 0.0 || matches[0] == 0.0) return 0.0;
  double log_precision = 0.0;
  for (std::size_t n = 0; n < orders; ++n) {
    const double p = n == 0 ? matches[n] / totals[n] : (matches[n] + 1.0) / (totals[n] + 1.0);
    log_precision += std::log(p) / static_cast<double>(orders);
  }
  const double bp = hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return bp * std::exp(log_precision);
}

double distinct_2(std::span<const Words> hypotheses) {
  std::set<std::pair<std::string_view, std::string_view>> unique;
  std::size_t total = 0;
  for (const auto& h : hypotheses) {
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      unique.emplace(h[i], h[i + 1]);
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

double perplexity(const LanguageModel& lm, std::span<const Words> hypotheses) {
  const Vocabulary& vocab = lm.vocabulary();
  double log_sum = 0.0;
  std::size_t tokens = 0;
  for (const auto& h : hypotheses) {
    TokenSeq prefix;
    bool known = true;
    for (const auto& w : h) {
      const auto id = known ? vocab.find(w) : std::nullopt;
      double p = 0.0;
      if (id) {
        p = lm.next_token_dist({}, prefix).prob(*id);
        prefix.push_back(*id);
      } else {
        // The model cannot condition past an unknown token.
        known = false;
      }
      log_sum += std::log(std::max(p, kPerplexityProbFloor));
      ++tokens;
    }
  }
  if (tokens == 0) return 1.0;
  return std::max(1.0, std::exp(-log_sum / static_cast<double>(tokens)));
}

MetricsReport compute_metrics(std::span<const Words> references, std::span<const Words> hypotheses,
                              const LanguageModel& lm) {
  check_parallel(references, hypotheses);
  MetricsReport report;
  report.sample_count = references.size();
  for (std::size_t s = 0; s < references.size(); ++s) {
    report.f1 += unigram_f1(references[s], hypotheses[s]);
    report.rouge_l += rouge_l(references[s], hypotheses[s]);
  }
  const double n = static_cast<double>(references.size());
  report.f1 /= n;
  report.rouge_l /= n;
  report.bleu2 = corpus_bleu(references, hypotheses, 2);
  report.bleu4 = corpus_bleu(references, hypotheses, 4);
  report.distinct2 = distinct_2(hypotheses);
  report.ppl = perplexity(lm, hypotheses);
  return report;
}

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j = {{"f1", r.f1},   {"rouge_l", r.rouge_l}, {"bleu2", r.bleu2},
                      {"bleu4", r.bleu4}, {"distinct2", r.distinct2}, {"ppl", r.ppl},
                      {"sample_count", r.sample_count}};
  j["rel"] = r.rel ? nlohmann::json(*r.rel) : nlohmann::json(nullptr);
  return j;
}

std::string format_metrics_table(std::span<const LabelledReport> rows, const std::string& label_header) {
  std::size_t label_width = label_header.size();
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());
  label_width += 2;

  std::string out;
  out += "# F1, Rouge-L, BLEU-2, BLEU-4, Distinct-2 in percent.\n";
  out += "# PPL: perplexity under the backend language model (not GPT-2).\n";
  out += "# Rel.: lexical-overlap ranker score (not a fine-tuned BERT ranker).\n";
  out += pad(label_header, label_width);
  const char* headers[] = {"F1", "Rouge-L", "BLEU-2", "BLEU-4", "Distinct-2", "PPL", "Rel."};
  for (const char* h : headers) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%12s", h);
    out += buf;
  }
  out += '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += pad(row.label, label_width);
    out += cell(100.0 * r.f1, 12);
    out += cell(100.0 * r.rouge_l, 12);
    out += cell(100.0 * r.bleu2, 12);
    out += cell(100.0 * r.bleu4, 12);
    out += cell(100.0 * r.distinct2, 12);
    out += cell(r.ppl, 12);
    if (r.rel) {
      out += cell(*r.rel, 12);
    } else {
      out += "           -";
    }
    out += '\n';
  }
  return out;
}

}  // namespace holo
