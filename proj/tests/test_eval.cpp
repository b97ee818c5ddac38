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

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "holo/eval/geval.hpp"
#include "holo/eval/metrics.hpp"
#include "holo/eval/ranker.hpp"

using namespace holo;

namespace {

Words words(const char* text) { return WhitespaceTokenizer().tokenize(text); }

// Scores candidates by a fixed table keyed on their first word.
class TableRanker final : public Ranker {
 public:
  explicit TableRanker(std::map<std::string, double> table) : table_(std::move(table)) {}
  double score(std::span<const std::string>, std::span<const std::string> candidate) const override {
    return table_.at(candidate.front());
  }

 private:
  std::map<std::string, double> table_;
};

ToyMarkovLM uniform_ab() { return ToyMarkovLM(Vocabulary({"a", "b"}), {0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}); }

// A chat-completions stand-in that answers with a fixed content string after
// `failures` 503 replies.
class StubLlm {
 public:
  StubLlm(std::string content, int failures) : content_(std::move(content)), failures_(failures) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      if (failures_-- > 0) {
        res.status = 503;
        return;
      }
      const nlohmann::json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content_}}}}}}};
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubLlm() {
    server_.stop();
    thread_.join();
  }
  GEvalEndpoint endpoint() const {
    GEvalEndpoint e;
    e.enabled = true;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_);
    e.model = "stub";
    e.timeout_seconds = 5;
    e.initial_backoff = std::chrono::milliseconds(1);
    e.max_backoff = std::chrono::milliseconds(2);
    e.min_interval = std::chrono::milliseconds(0);
    return e;
  }
  std::string last_auth_;
  std::string last_body_;

 private:
  httplib::Server server_;
  std::string content_;
  int failures_;
  int port_ = -1;
  std::thread thread_;
};

}  // namespace

TEST_CASE("unigram F1 and ROUGE-L micro-cases") {
  CHECK(unigram_f1(words("the cat sat"), words("the cat")) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(rouge_l(words("the cat sat"), words("the cat")) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rouge_l(words("the cat sat"), words("the cat"), 1.0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(lcs_length(words("a b c d e"), words("a c e b")) == 3);
  CHECK(unigram_f1(words("a b c d e"), words("a c e b")) == doctest::Approx(2 * 0.8 / 1.8).epsilon(1e-12));
  CHECK(unigram_f1(words("the cat"), words("the the the")) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(unigram_f1(words("a b"), words("c d")) == 0.0);
  CHECK(rouge_l(words("a b"), words("c d")) == 0.0);
  CHECK(unigram_f1(words("a b"), Words{}) == 0.0);
}

TEST_CASE("corpus BLEU") {
  const std::vector<Words> refs = {words("the cat sat")};
  SUBCASE("short hypothesis pays the brevity penalty") {
    const std::vector<Words> hyps = {words("the cat")};
    CHECK(corpus_bleu(refs, hyps, 2) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  }
  SUBCASE("identical text") {
    CHECK(corpus_bleu(refs, refs, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(corpus_bleu(refs, refs, 4) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("reordered tokens") {
    const std::vector<Words> r = {words("a b c d e")};
    const std::vector<Words> h = {words("a c e b")};
    CHECK(corpus_bleu(r, h, 2) == doctest::Approx(0.5 * std::exp(-0.25)).epsilon(1e-12));
  }
  SUBCASE("no unigram match") {
    const std::vector<Words> h = {words("dog ran")};
    CHECK(corpus_bleu(refs, h, 4) == 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(corpus_bleu(refs, {}, 2), std::invalid_argument);
    CHECK_THROWS_AS(corpus_bleu(refs, refs, 0), std::invalid_argument);
  }
}

TEST_CASE("distinct-2") {
  CHECK(distinct_2(std::vector<Words>{words("the the the")}) == 0.5);
  CHECK(distinct_2(std::vector<Words>{words("a b a b")}) == doctest::Approx(2.0 / 3.0));
  CHECK(distinct_2(std::vector<Words>{words("a b"), words("a b")}) == 0.5);
  CHECK(distinct_2(std::vector<Words>{words("a")}) == 0.0);
}

TEST_CASE("perplexity") {
  const auto lm = uniform_ab();
  CHECK(perplexity(lm, std::vector<Words>{words("a b a")}) == doctest::Approx(2.0));
  const ToyMarkovLM det(Vocabulary({"a", "b"}), {1, 0}, {0, 1, 1, 0});
  CHECK(perplexity(det, std::vector<Words>{words("a b a")}) == doctest::Approx(1.0));
  // Unknown tokens are floored, not fatal.
  const double ppl = perplexity(lm, std::vector<Words>{words("a zebra")});
  CHECK(ppl == doctest::Approx(std::exp(-(std::log(0.5) + std::log(kPerplexityProbFloor)) / 2)));
}

TEST_CASE("compute_metrics") {
  const auto lm = uniform_ab();
  SUBCASE("identical text scores 1") {
    const std::vector<Words> r = {words("a b a b"), words("b a")};
    const auto m = compute_metrics(r, r, lm);
    CHECK(m.f1 == 1.0);
    CHECK(m.rouge_l == 1.0);
    CHECK(m.bleu2 == doctest::Approx(1.0));
    CHECK(m.sample_count == 2);
    CHECK(m.ppl == doctest::Approx(2.0));
  }
  SUBCASE("length mismatch") {
    const std::vector<Words> r = {words("a")};
    CHECK_THROWS_AS(compute_metrics(r, {}, lm), std::invalid_argument);
  }
  SUBCASE("ranges and permutation equivariance on random samples") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> tok(0, 1);
    std::uniform_int_distribution<int> len(0, 7);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Words> r(8), h(8);
      for (std::size_t i = 0; i < 8; ++i) {
        for (int j = len(rng) + 1; j > 0; --j) r[i].push_back(tok(rng) ? "a" : "b");
        for (int j = len(rng); j > 0; --j) h[i].push_back(tok(rng) ? "a" : "b");
      }
      const auto m = compute_metrics(r, h, lm);
      for (double x : {m.f1, m.rouge_l, m.bleu2, m.bleu4, m.distinct2}) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
      CHECK(m.ppl >= 1.0);
      std::vector<std::size_t> order(8);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<Words> r2, h2;
      for (std::size_t i : order) {
        r2.push_back(r[i]);
        h2.push_back(h[i]);
      }
      const auto p = compute_metrics(r2, h2, lm);
      CHECK(p.f1 == doctest::Approx(m.f1).epsilon(1e-12));
      CHECK(p.rouge_l == doctest::Approx(m.rouge_l).epsilon(1e-12));
      CHECK(p.bleu2 == doctest::Approx(m.bleu2).epsilon(1e-12));
      CHECK(p.bleu4 == doctest::Approx(m.bleu4).epsilon(1e-12));
      CHECK(p.distinct2 == doctest::Approx(m.distinct2).epsilon(1e-12));
      CHECK(p.ppl == doctest::Approx(m.ppl).epsilon(1e-12));
    }
  }
}

TEST_CASE("metrics table layout") {
  MetricsReport m;
  m.f1 = 0.5;
  m.rouge_l = 0.25;
  m.ppl = 12.5;
  m.sample_count = 3;
  const std::vector<LabelledReport> rows = {{"on", m}};
  const std::string table = format_metrics_table(rows, "Setting");
  const auto header = table.find("F1");
  REQUIRE(header != std::string::npos);
  std::size_t last = header;
  for (const char* col : {"Rouge-L", "BLEU-2", "BLEU-4", "Distinct-2", "PPL", "Rel."}) {
    const auto at = table.find(col, last);
    CHECK(at != std::string::npos);
    last = at;
  }
  CHECK(table.find("50.00") != std::string::npos);
  CHECK(table.find("12.50") != std::string::npos);
  CHECK(table.find("  -\n") != std::string::npos);
  CHECK(to_json(m)["f1"] == 0.5);
}

TEST_CASE("ranking") {
  SUBCASE("one candidate") {
    const auto r = rank_candidates(LexicalRanker(), words("x"), std::vector<Words>{words("y")});
    REQUIRE(r.size() == 1);
    CHECK(r[0].index == 0);
  }
  SUBCASE("fixed scores") {
    const TableRanker ranker({{"lo", 0.1}, {"hi", 0.9}});
    const auto r = rank_candidates(ranker, {}, std::vector<Words>{words("lo"), words("hi")});
    CHECK(r[0].index == 1);
    CHECK(r[1].index == 0);
  }
  SUBCASE("lexical overlap") {
    const LexicalRanker ranker;
    const std::vector<Words> cands = {words("hello there friend"), words("i swim in the sea")};
    const auto r = rank_candidates(ranker, words("swim sea"), cands);
    CHECK(r[0].index == 1);
    CHECK(r[0].score == doctest::Approx(0.8 * 1.0 + 0.2 * 5.0 / 8.0));
    CHECK(r[1].score == doctest::Approx(0.2 * 3.0 / 8.0));
  }
  SUBCASE("ties keep input order") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> level(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
      std::map<std::string, double> table;
      std::vector<Words> cands;
      for (int i = 0; i < 12; ++i) {
        const std::string name = "c" + std::to_string(i);
        table[name] = 0.25 * level(rng);
        cands.push_back({name});
      }
      const TableRanker ranker(table);
      const auto r = rank_candidates(ranker, {}, cands);
      for (std::size_t i = 1; i < r.size(); ++i) {
        CHECK(r[i - 1].score >= r[i].score);
        if (r[i - 1].score == r[i].score) CHECK(r[i - 1].index < r[i].index);
      }
    }
  }
  SUBCASE("empty candidate list") {
    CHECK_THROWS_AS(rank_candidates(LexicalRanker(), {}, std::vector<Words>{}), std::invalid_argument);
  }
}

TEST_CASE("precision at 1 of 10") {
  std::vector<RankerEvalItem> items;
  for (int i = 0; i < 4; ++i) {
    RankerEvalItem item{words("ctx"), words("pos"), {}};
    for (int j = 0; j < 9; ++j) item.negatives.push_back(words("neg"));
    items.push_back(item);
  }
  CHECK(precision_at_1_of_10(TableRanker({{"pos", 1.0}, {"neg", 0.0}}), items) == 1.0);
  CHECK(precision_at_1_of_10(TableRanker({{"pos", 0.0}, {"neg", 1.0}}), items) == 0.0);
  CHECK(precision_at_1_of_10(TableRanker({{"pos", 0.5}, {"neg", 0.5}}), items) == 0.0);
  items[0].negatives.pop_back();
  CHECK_THROWS_AS(precision_at_1_of_10(TableRanker({{"pos", 1.0}, {"neg", 0.0}}), items), std::invalid_argument);
}

TEST_CASE("G-Eval prompts") {
  const std::string history = "I'm on the beach in Los Angeles, the water is so cold!";
  const std::string response = "It's cool. Every summer, when the weather becomes warm, people swim in the sea of Los Angeles.";
  for (const char* name : {"informativeness", "coherence", "humanness"}) {
    CAPTURE(name);
    const auto golden = holo::testing::read_file(holo::testing::source_path(std::string("tests/data/geval_") + name + ".txt"));
    REQUIRE(!golden.empty());
    CHECK(render_geval_prompt(parse_aspect(name), history, response) == golden);
    CHECK(aspect_name(parse_aspect(name)) == name);
  }
  CHECK(render_geval_prompt(Aspect::kCoherence, "h", "r").find("relevant and consistent with the dialogue history") !=
        std::string::npos);
  const auto empty = render_geval_prompt(Aspect::kHumanness, "hello", "");
  CHECK(empty.find("Response:\n\n\n\nScore:") != std::string::npos);
  CHECK_THROWS_AS(parse_aspect("fluency"), std::invalid_argument);
}

TEST_CASE("G-Eval score parsing") {
  CHECK(parse_geval_score("Score: 4") == 4);
  CHECK(parse_geval_score("3") == 3);
  CHECK(parse_geval_score("I'd give it 4.5, so 5") == 5);
  CHECK(parse_geval_score("10 out of 10... 2") == 2);
  CHECK_THROWS_AS(parse_geval_score("excellent"), BackendError);
  CHECK_THROWS_AS(parse_geval_score("0 or 9"), BackendError);
}

TEST_CASE("G-Eval client against a local stub") {
  SUBCASE("score from the completion") {
    StubLlm stub("Score: 4", 0);
    CHECK(geval_score(stub.endpoint(), "prompt") == 4);
    const auto body = nlohmann::json::parse(stub.last_body_);
    CHECK(body["model"] == "stub");
    CHECK(body["messages"][0]["content"] == "prompt");
  }
  SUBCASE("retries transient failures") {
    StubLlm stub("3", 2);
    CHECK(geval_score(stub.endpoint(), "prompt") == 3);
  }
  SUBCASE("gives up after the attempt budget") {
    StubLlm stub("3", 5);
    CHECK_THROWS_AS(geval_score(stub.endpoint(), "prompt"), BackendError);
  }
  SUBCASE("unparseable completion") {
    StubLlm stub("excellent", 0);
    CHECK_THROWS_AS(geval_score(stub.endpoint(), "prompt"), BackendError);
  }
  SUBCASE("disabled endpoint") {
    GEvalEndpoint e;
    CHECK_THROWS_AS(geval_score(e, "prompt"), std::logic_error);
  }
}
