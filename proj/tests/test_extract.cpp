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
#include "holo/extract/cover_rate.hpp"
#include "holo/extract/keywords.hpp"
#include "holo/extract/markov_estimate.hpp"
#include "holo/extract/support.hpp"
#include "holo/lm/enumeration.hpp"

using namespace holo;
using holo::testing::numbered_vocab;
using holo::testing::random_simplex;
using holo::testing::random_toy_lm;

namespace {

constexpr TokenId A = token_id(0);
constexpr TokenId B = token_id(1);
constexpr TokenId C = token_id(2);

SparseDist dist3(double a, double b, double c) { return SparseDist({{A, a}, {B, b}, {C, c}}, 3); }

// Row-wise helper: cols[k] is P(next | prev = k).
ToyMarkovLM toy(std::vector<double> pi, std::vector<std::vector<double>> cols) {
  std::vector<double> trans;
  for (const auto& c : cols) trans.insert(trans.end(), c.begin(), c.end());
  Vocabulary vocab = numbered_vocab(pi.size());
  return ToyMarkovLM(std::move(vocab), std::move(pi), std::move(trans));
}

ToyMarkovLM two_state() { return toy({0.7, 0.3}, {{0.4, 0.6}, {0.5, 0.5}}); }

double state_at(const MarkovEstimate& est, std::size_t t, TokenId id) {
  const auto pos = est.support().position(id);
  return pos ? est.states()[t][*pos] : 0.0;
}

}  // namespace

TEST_CASE("top-p support") {
  SUBCASE("exact boundary") {
    const Support s = top_p_support(dist3(0.6, 0.3, 0.1), 0.9);
    CHECK(s.tokens == std::vector<TokenId>{A, B});
    CHECK(s.cumulative_mass == doctest::Approx(0.9));
    CHECK(s.reached);
  }
  SUBCASE("p = 1 keeps every nonzero token") {
    const SparseDist d({{A, 0.5}, {C, 0.5}}, 3);
    CHECK(top_p_support(d, 1.0).tokens == std::vector<TokenId>{A, C});
  }
  SUBCASE("ties go to the lower id") {
    CHECK(top_p_support(dist3(0.5, 0.25, 0.25), 0.75).tokens == std::vector<TokenId>{A, B});
    CHECK(top_p_support(SparseDist({{A, 0.25}, {B, 0.5}, {C, 0.25}}, 3), 0.75).tokens ==
          std::vector<TokenId>{B, A});
  }
  SUBCASE("truncated distributions are flagged") {
    const Support s = top_p_support(SparseDist({{A, 0.5}}, 3), 0.9);
    CHECK_FALSE(s.reached);
    CHECK(s.size() == 1);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(top_p_support(dist3(0.6, 0.3, 0.1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(top_p_support(dist3(0.6, 0.3, 0.1), 1.5), std::invalid_argument);
    CHECK_THROWS_AS(top_p_support(SparseDist(), 0.5), std::invalid_argument);
  }
}

TEST_CASE("top-p support is minimal on random distributions") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pick_p(0.05, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto probs = random_simplex(rng, 2 + trial % 30, 0.2);
    const SparseDist d = SparseDist::from_dense(probs);
    const double p = pick_p(rng);
    const Support s = top_p_support(d, p);
    double mass = 0.0;
    double lowest = 1.0;
    for (TokenId id : s.tokens) {
      mass += d.prob(id);
      lowest = std::min(lowest, d.prob(id));
    }
    CHECK(mass >= p - 1e-9);
    CHECK(mass - lowest < p);
    // Every excluded token is no more probable than every included one.
    for (const auto& e : d.entries()) {
      if (!s.contains(e.id)) CHECK(e.prob <= lowest);
    }
  }
}

TEST_CASE("build_markov") {
  SUBCASE("deterministic a -> b") {
    const auto lm = toy({1, 0}, {{0, 1}, {1, 0}});
    const auto est = build_markov(lm, {}, 1.0);
    CHECK(est.support().tokens == std::vector<TokenId>{A});
    CHECK(est.pi0()[0] == 1.0);
    // b lies outside S, so column a leaks everything.
    CHECK(est.transition(0, 0) == 0.0);
    CHECK(est.leak()[0] == 1.0);
  }
  SUBCASE("support of two costs three calls") {
    const auto lm = toy({0.6, 0.3, 0.1}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CountingLanguageModel counting(lm);
    const auto est = build_markov(counting, {}, 0.9);
    CHECK(est.size() == 2);
    CHECK(counting.calls() == 3);
    CHECK(est.transition(1, 0) == 1.0);
    CHECK(est.leak()[1] == 1.0);
  }
  SUBCASE("p = 1 reproduces the fixture matrix") {
    const auto lm = two_state();
    const auto est = build_markov(lm, {}, 1.0);
    REQUIRE(est.support().tokens == std::vector<TokenId>{A, B});
    for (std::size_t from = 0; from < 2; ++from) {
      for (std::size_t to = 0; to < 2; ++to) {
        CHECK(est.transition(to, from) == lm.transition(token_id(to), token_id(from)));
      }
      CHECK(est.leak()[from] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("calls are 1 + |S| for random models") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const auto lm = random_toy_lm(rng, 3 + trial % 9);
      CountingLanguageModel counting(lm);
      BuildOptions opts;
      opts.workers = 1 + trial % 3;
      const auto est = build_markov(counting, {}, 0.5 + 0.5 * (trial % 2), opts);
      CHECK(counting.calls() == 1 + est.size());
      for (std::size_t k = 0; k < est.size(); ++k) {
        double total = est.leak()[k];
        for (double m : est.column(k)) total += m;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
      }
    }
  }
  SUBCASE("backend failure names the support token") {
    const auto lm = two_state();
    struct Failing final : LanguageModel {
      const LanguageModel& inner;
      explicit Failing(const LanguageModel& l) : inner(l) {}
      const Vocabulary& vocabulary() const override { return inner.vocabulary(); }
      SparseDist next_token_dist(TokenSpan c, TokenSpan prefix) const override {
        if (!prefix.empty() && prefix[0] == B) throw BackendError("boom");
        return inner.next_token_dist(c, prefix);
      }
    } failing(lm);
    try {
      (void)build_markov(failing, {}, 1.0);
      FAIL("expected a backend error");
    } catch (const BackendError& e) {
      CHECK(std::string(e.what()).find("'t1'") != std::string::npos);
    }
  }
}

TEST_CASE("propagate and word_marginal") {
  SUBCASE("a -> b -> a cycle") {
    // A one-hot start gives support {a}, so the estimate is built by hand.
    const MarkovEstimate cycle(Support{{A, B}, 1.0}, {1.0, 0.0}, {0, 1, 1, 0}, {0, 0}, 2);
    const auto run = propagate(cycle, 3);
    CHECK(run.states()[0] == std::vector<double>{1, 0});
    CHECK(run.states()[1] == std::vector<double>{0, 1});
    CHECK(run.states()[2] == std::vector<double>{1, 0});
  }
  SUBCASE("uniform is stationary") {
    const MarkovEstimate u(Support{{A, B, C}, 1.0}, std::vector<double>(3, 1.0 / 3), std::vector<double>(9, 1.0 / 3),
                           {0, 0, 0}, 3);
    const auto run = propagate(u, 5);
    for (const auto& s : run.states()) {
      for (double x : s) CHECK(x == doctest::Approx(1.0 / 3));
    }
  }
  SUBCASE("two-state fixture") {
    const auto est = propagate(build_markov(two_state(), {}, 1.0), 2);
    CHECK(est.states()[1][0] == doctest::Approx(0.43).epsilon(1e-12));
    const auto exact = exact_position_marginals(two_state(), {}, 2);
    CHECK(est.states()[1][0] == doctest::Approx(exact[1].prob(A)).epsilon(1e-12));
    CHECK(word_marginal(est).prob(A) == doctest::Approx(0.565).epsilon(1e-12));
  }
  SUBCASE("deterministic a -> b averages two one-hots") {
    const MarkovEstimate ab(Support{{A, B}, 1.0}, {1.0, 0.0}, {0, 1, 0, 0}, {0, 1}, 2);
    const auto m = word_marginal(propagate(ab, 2));
    CHECK(m.prob(A) == 0.5);
    CHECK(m.prob(B) == 0.5);
  }
  SUBCASE("T = 1 returns pi0 exactly") {
    std::mt19937_64 rng(8);
    const auto est = build_markov(random_toy_lm(rng, 7), {}, 0.8);
    const auto m = word_marginal(propagate(est, 1));
    for (std::size_t k = 0; k < est.size(); ++k) CHECK(m.prob(est.support().tokens[k]) == est.pi0()[k]);
  }
  SUBCASE("mass never increases without renormalization") {
    std::mt19937_64 rng(9);
    const auto est = propagate(build_markov(random_toy_lm(rng, 9), {}, 0.7), 8);
    double prev = 2.0;
    for (const auto& s : est.states()) {
      double mass = 0.0;
      for (double x : s) mass += x;
      CHECK(mass <= prev + 1e-12);
      prev = mass;
    }
    CHECK(est.states()[0] == std::vector<double>(est.pi0().begin(), est.pi0().end()));
  }
  SUBCASE("renormalize keeps unit mass") {
    std::mt19937_64 rng(10);
    PropagateOptions opts;
    opts.renormalize = true;
    const auto est = propagate(build_markov(random_toy_lm(rng, 9), {}, 0.7), 6, opts);
    for (std::size_t t = 1; t < est.states().size(); ++t) {
      double mass = 0.0;
      for (double x : est.states()[t]) mass += x;
      CHECK(mass == doctest::Approx(1.0));
    }
  }
  SUBCASE("errors") {
    const auto est = build_markov(two_state(), {}, 1.0);
    CHECK_THROWS_AS(propagate(est, 0), std::invalid_argument);
    CHECK_THROWS_AS(word_marginal(est), std::invalid_argument);
  }
}

TEST_CASE("propagated states match exact enumeration for first-order models") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t v = 2 + static_cast<std::size_t>(trial) % 7;
    const int horizon = 2 + trial % 4;
    const auto lm = random_toy_lm(rng, v, 0.2);
    const auto est = propagate(build_markov(lm, {}, 1.0), horizon);
    const auto exact = exact_position_marginals(lm, {}, horizon);
    for (int t = 0; t < horizon; ++t) {
      for (std::size_t j = 0; j < v; ++j) {
        CHECK(state_at(est, static_cast<std::size_t>(t), token_id(j)) ==
              doctest::Approx(exact[static_cast<std::size_t>(t)].prob(token_id(j))).epsilon(1e-9));
      }
    }
    // The marginal is the mean of the exact position marginals.
    const auto m = word_marginal(est);
    for (std::size_t j = 0; j < v; ++j) {
      double mean = 0.0;
      for (const auto& d : exact) mean += d.prob(token_id(j));
      CHECK(m.prob(token_id(j)) == doctest::Approx(mean / horizon).epsilon(1e-9));
    }
  }
}

TEST_CASE("truncated support under-approximates the exact marginals") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pick_p(0.3, 0.95);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t v = 3 + static_cast<std::size_t>(trial) % 8;
    const int horizon = 2 + trial % 3;
    const double p = pick_p(rng);
    const auto lm = random_toy_lm(rng, v, 0.2);
    const auto est = propagate(build_markov(lm, {}, p), horizon);
    const auto exact = exact_position_marginals(lm, {}, horizon);
    for (int t = 0; t < horizon; ++t) {
      for (std::size_t j = 0; j < v; ++j) {
        CHECK(state_at(est, static_cast<std::size_t>(t), token_id(j)) <=
              exact[static_cast<std::size_t>(t)].prob(token_id(j)) + 1e-9);
      }
    }
    double missing = 0.0;
    for (TokenId id : est.support().tokens) missing += exact[1].prob(id) - state_at(est, 1, id);
    CHECK(missing <= 1.0 - p + 1e-9);
  }
}

TEST_CASE("marginal argmax is invariant under uniform state scaling") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto est = propagate(build_markov(random_toy_lm(rng, 8), {}, 0.9), 4);
    auto scaled = est.states();
    for (auto& s : scaled) {
      for (double& x : s) x *= 0.37;
    }
    const auto a = word_marginal(est).ranked();
    const auto b = word_marginal(est.with_states(scaled)).ranked();
    REQUIRE(!a.empty());
    CHECK(a[0].id == b[0].id);
  }
}

TEST_CASE("select_keywords") {
  const Support all{{A, B, C}, 1.0};
  SUBCASE("intersection with the support") {
    const auto ks = select_keywords(dist3(0.5, 0.3, 0.2), Support{{A, B}, 0.8}, 2);
    REQUIRE(ks.size() == 2);
    CHECK(ks.keywords[0] == Keyword{A, 0.5});
    CHECK(ks.keywords[1] == Keyword{B, 0.3});
  }
  SUBCASE("k larger than the support") {
    const auto ks = select_keywords(dist3(0.2, 0.3, 0.5), Support{{C, B}, 0.8}, 10);
    REQUIRE(ks.size() == 2);
    CHECK(ks.keywords[0].id == C);
    CHECK(ks.keywords[1].id == B);
  }
  SUBCASE("ties by ascending id") {
    const auto ks = select_keywords(dist3(0.4, 0.4, 0.2), all, 1);
    REQUIRE(ks.size() == 1);
    CHECK(ks.keywords[0].id == A);
  }
  SUBCASE("top-k is taken before the intersection") {
    const auto ks = select_keywords(dist3(0.5, 0.3, 0.2), Support{{B, C}, 0.5}, 1);
    CHECK(ks.empty());
  }
  SUBCASE("k = 0 is rejected") { CHECK_THROWS_AS(select_keywords(dist3(0.5, 0.3, 0.2), all, 0), std::invalid_argument); }
  SUBCASE("keyword sets stay sorted, inside the support and at most k") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto est = propagate(build_markov(random_toy_lm(rng, 10), {}, 0.8), 5);
      const std::size_t k = 1 + static_cast<std::size_t>(trial) % 6;
      const auto ks = select_keywords(word_marginal(est), est.support(), k);
      CHECK(ks.size() <= k);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        CHECK(est.support().contains(ks.keywords[i].id));
        if (i > 0) CHECK(ks.keywords[i - 1].marginal >= ks.keywords[i].marginal);
      }
    }
  }
}

TEST_CASE("stopword filter") {
  const StopwordFilter filter;
  CHECK(filter.blocked("the"));
  CHECK(filter.blocked("The"));
  CHECK(filter.blocked("."));
  CHECK(filter.blocked(","));
  CHECK_FALSE(filter.blocked("beach"));
  CHECK_FALSE(filter.blocked("it-s"));

  const StopwordFilter none({}, false);
  CHECK_FALSE(none.blocked("the"));
  CHECK_FALSE(none.blocked("."));

  const Vocabulary v({"the", "sea", "."});
  const auto kept = filter.apply(SparseDist({{A, 0.5}, {B, 0.3}, {C, 0.2}}, 3), v);
  CHECK(kept.size() == 1);
  CHECK(kept.prob(B) == 0.3);
}

TEST_CASE("cover rate") {
  const std::size_t v = 200;
  std::vector<std::vector<double>> cols(v, std::vector<double>(v, 1.0 / v));
  SUBCASE("keywords at the top ranks are covered") {
    std::vector<double> pi(v, 0.0);
    pi[3] = 0.6;
    pi[4] = 0.4;
    const auto lm = toy(pi, cols);
    const std::vector<CoverSample> data = {{{}, {"t3", "the", "t4"}}, {{}, {"t4"}}, {{}, {"."}}};
    const auto r = cover_rate(lm, data, ContentWordExtractor());
    CHECK(r.top_count == 2);
    CHECK(r.keywords == 3);
    CHECK(r.skipped_samples == 1);
    CHECK(r.rate == 1.0);
  }
  SUBCASE("zero-probability references are never covered") {
    std::vector<double> pi(v, 0.0);
    pi[0] = 1.0;
    const auto lm = toy(pi, cols);
    const std::vector<CoverSample> data = {{{}, {"t5", "t9"}}, {{}, {"t150", "unknown"}}};
    const auto r = cover_rate(lm, data, ContentWordExtractor(), 0.05);
    CHECK(r.top_count == 10);
    CHECK(r.keywords == 4);
    CHECK(r.rate == 0.0);
  }
  SUBCASE("bad arguments") {
    const auto lm = two_state();
    CHECK_THROWS_AS(cover_rate(lm, {}, ContentWordExtractor()), std::invalid_argument);
    const std::vector<CoverSample> data = {{{}, {"t0"}}};
    CHECK_THROWS_AS(cover_rate(lm, data, ContentWordExtractor(), 0.0), std::invalid_argument);
  }
}
