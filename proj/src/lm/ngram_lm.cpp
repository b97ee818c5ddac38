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

#include "holo/lm/ngram_lm.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace holo {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("malformed number '" + s + "' in n-gram file");
  }
  return v;
}

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(std::string("truncated n-gram file: missing ") + what);
  return line;
}

template <typename T>
T keyed_value(const std::string& line, const std::string& key) {
  std::istringstream ss(line);
  std::string k;
  T value{};
  if (!(ss >> k >> value) || k != key) throw DataError("expected '" + key + " <value>' in n-gram file");
  return value;
}

}  // namespace

NgramLM NgramLM::train(const Corpus& corpus, int order, double smoothing) {
  if (corpus.empty()) throw DataError("cannot train an n-gram model on an empty corpus");
  if (order < 2) throw std::invalid_argument("n-gram order must be at least 2");
  if (!(smoothing >= 0.0)) throw std::invalid_argument("smoothing must be non-negative");

  NgramLM lm(build_vocabulary(corpus), order, smoothing);
  for (const auto& sentence : corpus) {
    const TokenSeq ids = lm.vocab_.encode(sentence);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t n = 0; n < static_cast<std::size_t>(order) && n <= i; ++n) {
        lm.add_count(TokenSeq(ids.begin() + static_cast<std::ptrdiff_t>(i - n),
                              ids.begin() + static_cast<std::ptrdiff_t>(i)),
                     ids[i], 1);
      }
    }
  }
  return lm;
}

void NgramLM::add_count(const TokenSeq& history, TokenId next, std::uint64_t n) {
  auto& succ = counts_[history];
  succ.next[next] += n;
  succ.total += n;
}

SparseDist NgramLM::distribution(const Successors& successors) const {
  std::vector<DistEntry> entries;
  if (smoothing_ == 0.0) {
    entries.reserve(successors.next.size());
    for (const auto& [id, c] : successors.next) {
      entries.push_back({id, static_cast<double>(c) / static_cast<double>(successors.total)});
    }
  } else {
    const double denom =
        static_cast<double>(successors.total) + smoothing_ * static_cast<double>(vocab_.size());
    entries.reserve(vocab_.size());
    auto it = successors.next.begin();
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      double c = 0.0;
      if (it != successors.next.end() && index_of(it->first) == i) {
        c = static_cast<double>(it->second);
        ++it;
      }
      entries.push_back({token_id(i), (c + smoothing_) / denom});
    }
  }
  return SparseDist(std::move(entries), vocab_.size());
}

SparseDist NgramLM::next_token_dist(TokenSpan context, TokenSpan prefix) const {
  vocab_.check(context);
  vocab_.check(prefix);
  TokenSeq history(context.begin(), context.end());
  history.insert(history.end(), prefix.begin(), prefix.end());

  const std::size_t longest = std::min<std::size_t>(static_cast<std::size_t>(order_ - 1), history.size());
  for (std::size_t n = longest; n >= 1; --n) {
    const TokenSeq h(history.end() - static_cast<std::ptrdiff_t>(n), history.end());
    if (auto it = counts_.find(h); it != counts_.end() && it->second.total > 0) {
      return distribution(it->second);
    }
  }
  return distribution(counts_.at(TokenSeq{}));
}

std::uint64_t NgramLM::count(TokenSpan history, TokenId next) const {
  auto it = counts_.find(TokenSeq(history.begin(), history.end()));
  if (it == counts_.end()) return 0;
  auto jt = it->second.next.find(next);
  return jt == it->second.next.end() ? 0 : jt->second;
}

void NgramLM::save(std::ostream& out) const {
  out << kFileHeader << '\n';
  out << "order " << order_ << '\n';
  out << "smoothing " << format_double(smoothing_) << '\n';
  out << "vocab " << vocab_.size() << '\n';
  vocab_.save(out);
  std::size_t lines = 0;
  for (const auto& [h, succ] : counts_) lines += succ.next.size();
  out << "ngrams " << lines << '\n';
  for (const auto& [h, succ] : counts_) {
    for (const auto& [id, c] : succ.next) {
      out << h.size() + 1;
      for (TokenId t : h) out << ' ' << index_of(t);
      out << ' ' << index_of(id) << ' ' << c << '\n';
    }
  }
}

NgramLM NgramLM::load(std::istream& in) {
  if (expect_line(in, "header") != kFileHeader) {
    throw DataError(std::string("not an n-gram model file (expected header '") + kFileHeader + "')");
  }
  const int order = keyed_value<int>(expect_line(in, "order"), "order");
  const std::string smoothing_line = expect_line(in, "smoothing");
  if (smoothing_line.rfind("smoothing ", 0) != 0) throw DataError("expected 'smoothing <value>' in n-gram file");
  const double smoothing = parse_double(smoothing_line.substr(10));
  const std::size_t vocab_size = keyed_value<std::size_t>(expect_line(in, "vocab"), "vocab");
  if (order < 2 || smoothing < 0.0) throw DataError("invalid n-gram model parameters");

  Vocabulary vocab;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    const std::string token = expect_line(in, "vocabulary entry");
    if (token.empty() || vocab.find(token)) throw DataError("bad vocabulary entry in n-gram file");
    vocab.add(token);
  }
  NgramLM lm(std::move(vocab), order, smoothing);

  const std::size_t lines = keyed_value<std::size_t>(expect_line(in, "ngrams"), "ngrams");
  for (std::size_t l = 0; l < lines; ++l) {
    std::istringstream ss(expect_line(in, "n-gram entry"));
    std::size_t n = 0;
    if (!(ss >> n) || n < 1 || n > static_cast<std::size_t>(order)) throw DataError("bad n-gram length");
    TokenSeq ids(n);
    for (auto& id : ids) {
      std::size_t raw = 0;
      if (!(ss >> raw) || raw >= vocab_size) throw DataError("bad token id in n-gram file");
      id = token_id(raw);
    }
    std::uint64_t c = 0;
    if (!(ss >> c) || c == 0) throw DataError("bad count in n-gram file");
    const TokenId next = ids.back();
    ids.pop_back();
    lm.add_count(ids, next, c);
  }
  if (!lm.counts_.contains(TokenSeq{})) throw DataError("n-gram file has no unigram counts");
  return lm;
}

void NgramLM::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  save(out);
}

NgramLM NgramLM::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open n-gram model " + path.string());
  return load(in);
}

bool operator==(const NgramLM& a, const NgramLM& b) {
  return a.order_ == b.order_ && a.smoothing_ == b.smoothing_ && a.vocab_ == b.vocab_ &&
         a.counts_ == b.counts_;
}

}  // namespace holo
