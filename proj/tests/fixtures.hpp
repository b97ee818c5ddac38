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

// Shared test fixtures: random toy models, paths, small helpers.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holo/lm/toy_markov_lm.hpp"

namespace holo::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(HOLO_SOURCE_DIR) / relative;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Vocabulary numbered_vocab(std::size_t n) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < n; ++i) tokens.push_back("t" + std::to_string(i));
  return Vocabulary(tokens);
}

/// Random probability vector. With `zero_rate` > 0 some entries are zeroed,
/// but never all of them.
inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double zero_rate = 0.0) {
  std::exponential_distribution<double> draw(1.0);
  std::bernoulli_distribution drop(zero_rate);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = drop(rng) ? 0.0 : draw(rng) + 1e-3;
    total += x;
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : v) x /= total;
  return v;
}

/// Random first-order model. pi is strictly positive so that p = 1 keeps
/// the whole vocabulary in the support; transition columns may hold zeros.
inline ToyMarkovLM random_toy_lm(std::mt19937_64& rng, std::size_t vocab_size, double column_zero_rate = 0.3) {
  std::vector<double> pi = random_simplex(rng, vocab_size);
  std::vector<double> trans;
  for (std::size_t k = 0; k < vocab_size; ++k) {
    auto column = random_simplex(rng, vocab_size, column_zero_rate);
    trans.insert(trans.end(), column.begin(), column.end());
  }
  return ToyMarkovLM(numbered_vocab(vocab_size), std::move(pi), std::move(trans));
}

/// Runs a shell command and captures stdout and the exit status.
struct CommandResult {
  int status = -1;
  std::string out;
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

}  // namespace holo::testing
