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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "holo/chain/chain_builder.hpp"

using namespace holo;
using holo::testing::random_simplex;

namespace {

constexpr TokenId A = token_id(0);
constexpr TokenId B = token_id(1);
constexpr TokenId C = token_id(2);

// Full-support estimate over ids 0..n-1 with the given pi0 and column-major
// transitions; the leak is whatever the columns leave over.
MarkovEstimate estimate(std::vector<double> pi0, std::vector<double> trans) {
  const std::size_t n = pi0.size();
  Support s;
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back(token_id(i));
  s.cumulative_mass = 1.0;
  std::vector<double> leak(n);
  for (std::size_t k = 0; k < n; ++k) {
    double kept = 0.0;
    for (std::size_t j = 0; j < n; ++j) kept += trans[k * n + j];
    leak[k] = std::max(0.0, 1.0 - kept);
  }
  return MarkovEstimate(s, std::move(pi0), std::move(trans), std::move(leak), n);
}

KeywordSet keyword_set(std::initializer_list<std::pair<TokenId, double>> kws) {
  KeywordSet ks;
  for (const auto& [id, m] : kws) ks.keywords.push_back({id, m});
  return ks;
}

SparseDist marginal_of(const KeywordSet& ks, std::size_t vocab) {
  std::vector<DistEntry> e;
  for (const auto& k : ks.keywords) e.push_back({k.id, k.marginal});
  return SparseDist(std::move(e), vocab);
}

struct RandomInstance {
  MarkovEstimate est;
  KeywordSet keywords;
};

RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, double zero_rate) {
  auto pi = random_simplex(rng, n);
  std::vector<double> trans;
  for (std::size_t k = 0; k < n; ++k) {
    auto col = random_simplex(rng, n, zero_rate);
    for (double& x : col) x *= 0.9;  // leave some leak
    trans.insert(trans.end(), col.begin(), col.end());
  }
  const auto m = random_simplex(rng, n);
  KeywordSet ks;
  for (std::size_t i = 0; i < n; ++i) ks.keywords.push_back({token_id(i), m[i]});
  return {estimate(std::move(pi), std::move(trans)), std::move(ks)};
}

// Direct product of the chain formula in linear space.
double direct_score(const std::vector<TokenId>& chain, const MarkovEstimate& est, const KeywordSet& ks) {
  double s = est.pi0()[index_of(chain[0])];
  for (std::size_t i = 1; i < chain.size(); ++i) {
    s *= ks.marginal(chain[i]) * est.transition(index_of(chain[i]), index_of(chain[i - 1]));
  }
  return s;
}

// Every ordered keyword sequence up to length L that cannot be extended by
// an unused keyword with a positive transition.
void enumerate_maximal(const MarkovEstimate& est, const KeywordSet& ks, std::size_t max_len,
                       std::vector<TokenId>& path, std::vector<std::vector<TokenId>>& out) {
  bool extended = false;
  if (path.size() < max_len) {
    for (const auto& kw : ks.keywords) {
      if (std::find(path.begin(), path.end(), kw.id) != path.end()) continue;
      if (est.transition(index_of(kw.id), index_of(path.back())) <= 0.0) continue;
      extended = true;
      path.push_back(kw.id);
      enumerate_maximal(est, ks, max_len, path, out);
      path.pop_back();
    }
  }
  if (!extended) out.push_back(path);
}

}  // namespace

TEST_CASE("chain probability") {
  // Slots a, b, c; M(b|a) = 0.4, M(c|b) = 0.5.
  const auto est = estimate({0.5, 0.3, 0.2}, {0.0, 0.4, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0});
  const SparseDist marginal({{A, 0.3}, {B, 0.2}, {C, 0.1}}, 3);
  const std::vector<TokenId> a = {A};
  const std::vector<TokenId> ab = {A, B};
  const std::vector<TokenId> abc = {A, B, C};
  const std::vector<TokenId> ba = {B, A};
  CHECK(chain_probability(a, est, marginal) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(chain_probability(ab, est, marginal) == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(chain_probability(abc, est, marginal) == doctest::Approx(0.002).epsilon(1e-12));
  CHECK(chain_probability(ba, est, marginal) == 0.0);
  CHECK(chain_log_probability(ba, est, marginal) == kLogZero);
  CHECK(chain_log_probability(abc, est, marginal) == doctest::Approx(std::log(0.002)).epsilon(1e-12));

  const std::vector<TokenId> outside = {token_id(7)};
  CHECK_THROWS_AS(chain_probability(outside, est, marginal), std::invalid_argument);
  CHECK_THROWS_AS(chain_probability(std::vector<TokenId>{}, est, marginal), std::invalid_argument);
}

TEST_CASE("build_chains examples") {
  SUBCASE("single keyword") {
    const auto est = estimate({0.6, 0.4}, {0.5, 0.5, 0.5, 0.5});
    const auto chains = build_chains(keyword_set({{B, 0.3}}), est);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].tokens == std::vector<TokenId>{B});
    CHECK(chains[0].score == doctest::Approx(0.4).epsilon(1e-15));
  }
  SUBCASE("zero transitions block extension") {
    const auto est = estimate({0.6, 0.4}, {0.9, 0.0, 0.0, 0.9});
    const auto chains = build_chains(keyword_set({{A, 0.5}, {B, 0.5}}), est);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].tokens == std::vector<TokenId>{A});
    CHECK(chains[1].tokens == std::vector<TokenId>{B});
  }
  SUBCASE("two-keyword product") {
    const auto est = estimate({0.5, 0.5}, {0.0, 0.4, 0.0, 0.0});
    ChainOptions opts;
    opts.threshold = 0.0;
    const auto chains = build_chains(keyword_set({{A, 0.3}, {B, 0.2}}), est, opts);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].tokens == std::vector<TokenId>{B});
    CHECK(chains[1].tokens == std::vector<TokenId>{A, B});
    CHECK(chains[1].score == doctest::Approx(0.04).epsilon(1e-12));
  }
  SUBCASE("threshold stops extension") {
    const auto est = estimate({0.5, 0.5}, {0.0, 0.4, 0.0, 0.0});
    ChainOptions opts;
    opts.threshold = 0.05;
    const auto chains = build_chains(keyword_set({{A, 0.3}, {B, 0.2}}), est, opts);
    // [a, b] would score 0.04, below the threshold.
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].tokens == std::vector<TokenId>{A});
    CHECK(chains[1].tokens == std::vector<TokenId>{B});
  }
  SUBCASE("length cap") {
    const auto est = estimate({0.4, 0.3, 0.3}, std::vector<double>(9, 0.3));
    ChainOptions opts;
    opts.max_length = 2;
    for (const auto& c : build_chains(keyword_set({{A, 0.4}, {B, 0.3}, {C, 0.3}}), est, opts)) {
      CHECK(c.tokens.size() == 2);
    }
  }
  SUBCASE("bad arguments") {
    const auto est = estimate({0.6, 0.4}, {0.5, 0.5, 0.5, 0.5});
    const auto ks = keyword_set({{A, 0.5}});
    CHECK_THROWS_AS(build_chains(KeywordSet{}, est), std::invalid_argument);
    ChainOptions opts;
    opts.max_length = 0;
    CHECK_THROWS_AS(build_chains(ks, est, opts), std::invalid_argument);
    opts = {};
    opts.beam_k = 0;
    CHECK_THROWS_AS(build_chains(ks, est, opts), std::invalid_argument);
    opts = {};
    opts.threshold = 1.0;
    CHECK_THROWS_AS(build_chains(ks, est, opts), std::invalid_argument);
    CHECK_THROWS_AS(build_chains(keyword_set({{C, 0.5}}), est), std::invalid_argument);
  }
}

TEST_CASE("pick_top_z") {
  const auto chain = [](std::vector<TokenId> t, double s) { return KeywordChain{std::move(t), s, std::log(s)}; };
  SUBCASE("fewer chains than Z") {
    const auto top = pick_top_z({chain({A}, 0.3)}, 5);
    CHECK(top.size() == 1);
  }
  SUBCASE("highest scores first") {
    const auto top = pick_top_z({chain({C}, 0.001), chain({A}, 0.04), chain({B}, 0.002)}, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].score == 0.04);
    CHECK(top[1].score == 0.002);
  }
  SUBCASE("equal scores fall back to lexicographic ids") {
    const auto top = pick_top_z({chain({B, A}, 0.1), chain({A, C}, 0.1), chain({A, B}, 0.1)}, 3);
    CHECK(top[0].tokens == std::vector<TokenId>{A, B});
    CHECK(top[1].tokens == std::vector<TokenId>{A, C});
    CHECK(top[2].tokens == std::vector<TokenId>{B, A});
  }
  SUBCASE("Z = 0") { CHECK_THROWS_AS(pick_top_z({}, 0), std::invalid_argument); }
}

TEST_CASE("chain JSON round trip") {
  const Vocabulary v({"sun", "sea"});
  const KeywordChain c{{B, A}, 0.25, std::log(0.25)};
  const auto back = chain_from_json(to_json(c, v), v);
  CHECK(back.tokens == c.tokens);
  CHECK(back.score == c.score);
  CHECK_THROWS_AS(chain_from_json(nlohmann::json{{"tokens", {"sun"}}, {"score", 0.0}}, v), DataError);
  CHECK_THROWS_AS(chain_from_json(nlohmann::json{{"tokens", {"moon"}}, {"score", 0.5}}, v), UnknownTokenError);
  CHECK_THROWS_AS(chain_from_json(nlohmann::json{{"score", 0.5}}, v), DataError);
}

TEST_CASE("returned chains satisfy their invariants") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 6;
    auto inst = random_instance(rng, n, 0.3);
    ChainOptions opts;
    opts.max_length = 1 + static_cast<std::size_t>(trial) % 5;
    opts.beam_k = 1 + static_cast<std::size_t>(trial) % 3;
    opts.threshold = trial % 2 == 0 ? 0.0 : 1e-4;
    const auto chains = build_chains(inst.keywords, inst.est, opts);
    CHECK(chains == build_chains(inst.keywords, inst.est, opts));
    const auto marginal = marginal_of(inst.keywords, n);
    for (std::size_t i = 0; i < chains.size(); ++i) {
      const auto& c = chains[i];
      CHECK(c.tokens.size() >= 1);
      CHECK(c.tokens.size() <= opts.max_length);
      auto sorted = c.tokens;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      CHECK(c.score > 0.0);
      CHECK(c.score <= 1.0);
      CHECK(c.log_score == doctest::Approx(std::log(c.score)).epsilon(1e-9));
      const double expected = direct_score(c.tokens, inst.est, inst.keywords);
      CHECK(c.score == doctest::Approx(expected).epsilon(1e-12));
      CHECK(chain_probability(c.tokens, inst.est, marginal) == doctest::Approx(c.score).epsilon(1e-12));
      for (std::size_t len = 1; len < c.tokens.size(); ++len) {
        const std::vector<TokenId> prefix(c.tokens.begin(), c.tokens.begin() + static_cast<std::ptrdiff_t>(len));
        CHECK(direct_score(prefix, inst.est, inst.keywords) >= c.score);
      }
      if (i > 0) CHECK_FALSE(chain_order(c, chains[i - 1]));
    }
  }
}

TEST_CASE("full beam matches exhaustive search") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 6;  // up to 7 keywords
    auto inst = random_instance(rng, n, 0.4);
    ChainOptions opts;
    opts.max_length = 1 + static_cast<std::size_t>(trial) % 7;
    opts.beam_k = n;
    opts.threshold = 0.0;
    const auto chains = build_chains(inst.keywords, inst.est, opts);

    std::vector<std::vector<TokenId>> all;
    for (const auto& kw : inst.keywords.keywords) {
      std::vector<TokenId> path = {kw.id};
      enumerate_maximal(inst.est, inst.keywords, opts.max_length, path, all);
    }
    CHECK(chains.size() == all.size());
    std::vector<TokenId> best;
    double best_score = -1.0;
    for (const auto& seq : all) {
      const double s = direct_score(seq, inst.est, inst.keywords);
      if (s > best_score || (s == best_score && seq < best)) {
        best_score = s;
        best = seq;
      }
    }
    REQUIRE(!chains.empty());
    CHECK(chains[0].score == doctest::Approx(best_score).epsilon(1e-12));
    CHECK(direct_score(chains[0].tokens, inst.est, inst.keywords) == doctest::Approx(best_score).epsilon(1e-12));
  }
}
