// Copyright 2026 The BBAEG Authors
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

#include <set>

#include "bbaeg/errors.hpp"
#include "bbaeg/importance.hpp"
#include "bbaeg/stub_backends.hpp"

using namespace bbaeg;

namespace {

Lexicon f1_lexicon() {
  Lexicon lex;
  lex.bias = -2.0;
  lex.weights = {{"nausea", 2.0}, {"induced", 1.5}, {"sickness", 2.0}};
  return lex;
}

/// Counts how many texts actually reach the wrapped victim.
class CountingVictim : public VictimClassifier {
 public:
  explicit CountingVictim(VictimClassifier& inner) : inner_(inner) {}
  std::vector<ProbabilityDistribution> predict(const std::vector<std::string>& texts) override {
    count_ += static_cast<int>(texts.size());
    return inner_.predict(texts);
  }
  int num_classes() const override { return inner_.num_classes(); }
  int count() const { return count_; }

 private:
  VictimClassifier& inner_;
  int count_ = 0;
};

}  // namespace

TEST_SUITE("importance") {
  TEST_CASE("deletion importance on the F1 fixture") {
    KeywordClassifier victim(f1_lexicon());
    const Document doc = tokenize("clozapine induced nausea");
    const ImportanceRanking ranking = token_importance(doc, victim, 1);

    CHECK(ranking.scores[2] == doctest::Approx(0.440033).epsilon(1e-6));
    CHECK(ranking.scores[1] == doctest::Approx(0.317574).epsilon(1e-6));
    CHECK(ranking.scores[0] == doctest::Approx(0.0));  // absent from the lexicon
    REQUIRE(ranking.order.size() == 3);
    CHECK(ranking.order == std::vector<int>{2, 1, 0});
  }

  TEST_CASE("ranking consumes exactly rankable + 1 queries") {
    KeywordClassifier inner(f1_lexicon());
    CountingVictim victim(inner);
    const Document doc = tokenize("clozapine induced nausea today .");
    token_importance(doc, victim, 1);
    CHECK(victim.count() == 4 + 1);  // the period is not rankable
  }

  TEST_CASE("punctuation is excluded from the ranking") {
    KeywordClassifier victim(f1_lexicon());
    const Document doc = tokenize("nausea .");
    const ImportanceRanking ranking = token_importance(doc, victim, 1);
    CHECK(ranking.order == std::vector<int>{0});
  }

  TEST_CASE("all-punctuation documents cannot be ranked") {
    KeywordClassifier victim(f1_lexicon());
    CHECK_THROWS_AS(token_importance(tokenize(". . !"), victim, 1), NoRankableTokensError);
  }

  TEST_CASE("stopword skipping is off by default and honored when on") {
    KeywordClassifier victim(f1_lexicon());
    const Document doc = tokenize("the nausea was induced");
    const ImportanceRanking ranked_all = token_importance(doc, victim, 1, false);
    CHECK(ranked_all.order.size() == 4);
    const ImportanceRanking skipped = token_importance(doc, victim, 1, true);
    CHECK(skipped.order.size() == 2);  // "the" and "was" are stopwords
    for (int idx : skipped.order) CHECK((idx == 1 || idx == 3));
  }

  TEST_CASE("negative importance is kept and visited last") {
    Lexicon lex;
    lex.bias = 0.5;
    lex.weights = {{"bad", -1.0}, {"good", 1.0}};
    KeywordClassifier victim(lex);
    // deleting "bad" raises P(1), so its importance is negative
    const Document doc = tokenize("bad good filler");
    const ImportanceRanking ranking = token_importance(doc, victim, 1);
    CHECK(ranking.scores[0] < 0.0);
    CHECK(ranking.order.back() == 0);
  }

  TEST_CASE("visit order without entities follows the ranking") {
    ImportanceRanking ranking;
    ranking.scores = {0.1, 0.5, 0.3};
    ranking.order = {1, 2, 0};
    const Document doc = tokenize("a b c");
    const auto units = visit_order(doc, ranking, {});
    REQUIRE(units.size() == 3);
    CHECK(units[0].start == 1);
    CHECK(units[1].start == 2);
    CHECK(units[2].start == 0);
    for (const VisitUnit& u : units) CHECK_FALSE(u.is_entity);
  }

  TEST_CASE("entity tokens merge into one unit scored by the max member") {
    ImportanceRanking ranking;
    ranking.scores = {0.1, 0.4, 0.2};
    ranking.order = {1, 2, 0};
    const Document doc = tokenize("left right other");
    EntitySpan span;
    span.start_token = 0;
    span.end_token = 1;
    span.ontology_id = "X";
    const auto units = visit_order(doc, ranking, {span});
    REQUIRE(units.size() == 2);
    CHECK(units[0].is_entity);
    CHECK(units[0].score == doctest::Approx(0.4));
    CHECK(units[0].start == 0);
    CHECK(units[0].end == 1);
    CHECK(units[1].start == 2);
  }

  TEST_CASE("equal scores break ties toward the lower start index") {
    ImportanceRanking ranking;
    ranking.scores = {0.2, 0.2, 0.2};
    ranking.order = {0, 1, 2};
    const Document doc = tokenize("x y z");
    const auto units = visit_order(doc, ranking, {});
    CHECK(units[0].start == 0);
    CHECK(units[1].start == 1);
    CHECK(units[2].start == 2);
  }

  TEST_CASE("units partition the rankable tokens") {
    KeywordClassifier victim(f1_lexicon());
    const Document doc = tokenize("clozapine induced nausea and sickness today .");
    const ImportanceRanking ranking = token_importance(doc, victim, 1);
    EntitySpan span;
    span.start_token = 2;
    span.end_token = 4;  // "nausea and sickness"
    span.ontology_id = "X";
    const auto units = visit_order(doc, ranking, {span});

    std::set<int> covered;
    for (const VisitUnit& u : units) {
      for (int i = u.start; i <= u.end; ++i) {
        CHECK(covered.insert(i).second);  // each token at most once
      }
    }
    for (int idx : ranking.order) CHECK(covered.count(idx) == 1);
  }

  TEST_CASE("overlapping spans are rejected") {
    ImportanceRanking ranking;
    ranking.scores = {0.0, 0.0, 0.0};
    ranking.order = {0, 1, 2};
    const Document doc = tokenize("x y z");
    EntitySpan a;
    a.start_token = 0;
    a.end_token = 1;
    EntitySpan b;
    b.start_token = 1;
    b.end_token = 2;
    CHECK_THROWS_AS(visit_order(doc, ranking, {a, b}), SpanError);
  }
}
